#pragma once

#include "qkneser/gf.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qkneser::pg {

using gf::Field;
using gf::Scalar;
using Vector = std::vector<Scalar>;

/// A linear subspace of GF(q)^n held as its reduced row-echelon basis.
///
/// Ranks are vector-space ranks throughout: rank 1 is a projective point,
/// rank 0 the zero subspace (the empty projective subspace). The RREF is
/// unique, so two Subspaces over the same field are equal exactly when
/// their basis matrices are identical.
class Subspace {
public:
    /// Zero subspace of GF(q)^n.
    Subspace(const Field& field, int n);

    static Subspace full(const Field& field, int n);

    const Field& field() const noexcept { return *field_; }
    int ambient_rank() const noexcept { return n_; }
    int rank() const noexcept { return r_; }
    bool is_zero() const noexcept { return r_ == 0; }
    bool is_full() const noexcept { return r_ == n_; }

    /// Row-major r x n basis.
    std::span<const Scalar> basis() const noexcept { return rows_; }
    std::span<const Scalar> row(int i) const noexcept
    {
        return {rows_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
    }
    std::vector<Vector> rows() const;
    std::vector<int> pivots() const;

    std::size_t hash() const noexcept;

    friend bool operator==(const Subspace& a, const Subspace& b) noexcept
    {
        return a.n_ == b.n_ && a.r_ == b.r_ && a.field_->q() == b.field_->q() && a.rows_ == b.rows_;
    }
    /// Orders by rank, then the flattened basis; matches enumeration order
    /// within a rank.
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) noexcept;

private:
    friend Subspace rref(std::span<const Vector>, int, const Field&);
    friend Subspace rref_flat(std::vector<Scalar>, int, const Field&);

    const Field* field_;
    int n_;
    int r_ = 0;
    std::vector<Scalar> rows_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

/// Canonical span of the given rows. Throws Error(DimensionMismatch) when a
/// row does not have length n.
Subspace rref(std::span<const Vector> rows, int n, const Field& field);
/// As rref(), with rows given as one row-major buffer of length (#rows * n).
Subspace rref_flat(std::vector<Scalar> rows, int n, const Field& field);

/// Rank of the stacked rows (no canonical form is produced).
int matrix_rank(std::vector<Scalar> rows, int n, const Field& field);

Subspace meet(const Subspace& a, const Subspace& b);
Subspace join(const Subspace& a, const Subspace& b);
/// True iff b is a subspace of a.
bool contains(const Subspace& a, const Subspace& b);
bool in_span(const Subspace& a, std::span<const Scalar> v);
/// Orthogonal complement under the standard dot product.
Subspace dual(const Subspace& a);

/// Image under v -> v M for an n x n row-major matrix M (invertible for the
/// result to keep its rank).
Subspace transform(const Subspace& a, std::span<const Scalar> matrix);

Vector unit_vector(int n, int i);
Subspace span_of_units(const Field& field, int n, std::initializer_list<int> indices);

std::string to_string(const Subspace& s);

/// Streams the rank-r subspaces of GF(q)^n, each exactly once: pivot-column
/// sets in lexicographic order, then free entries lexicographically in
/// row-major order with the last free entry varying fastest.
class SubspaceStream {
public:
    SubspaceStream(int n, int r, const Field& field);

    std::optional<Subspace> next();

private:
    bool advance_pivots();
    void reset_free();

    const Field* field_;
    int n_, r_;
    bool done_ = false;
    std::vector<int> pivots_;
    std::vector<std::size_t> free_slots_; // offsets into the row-major buffer
    std::vector<Scalar> digits_;
};

SubspaceStream enumerate_subspaces(int n, int r, const Field& field);

template <class Fn>
void for_each_subspace(int n, int r, const Field& field, Fn&& fn)
{
    SubspaceStream stream(n, r, field);
    while (auto s = stream.next())
        fn(*s);
}

std::vector<Subspace> all_subspaces(int n, int r, const Field& field);

/// Dense numbering of the points (rank-1 subspaces) of GF(q)^n in
/// enumeration order, and point-set bitmasks of subspaces. Meet and
/// containment of subspaces reduce to AND / subset on these masks.
class PointIndex {
public:
    PointIndex(const Field& field, int n);

    const Field& field() const noexcept { return *field_; }
    int ambient_rank() const noexcept { return n_; }
    std::size_t size() const noexcept { return count_; }
    /// 64-bit words per mask.
    std::size_t words() const noexcept { return words_; }

    /// Id of the point spanned by a nonzero vector.
    std::uint32_t id_of(std::span<const Scalar> v) const;
    Vector point(std::uint32_t id) const;

    /// Writes the point-set mask of s into out[0 .. words()).
    void fill_mask(const Subspace& s, std::span<std::uint64_t> out) const;
    std::vector<std::uint64_t> mask(const Subspace& s) const;
    std::vector<std::uint32_t> points_of(const Subspace& s) const;

private:
    const Field* field_;
    int n_;
    std::size_t count_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint32_t> offset_; // first id with pivot column c
};

/// Number of points in a subspace of the given rank: (q^r - 1)/(q - 1).
std::uint64_t points_in_rank(int rank, int q);
/// Inverse of points_in_rank for a count that is known to be exact.
int rank_from_points(std::uint64_t points, int q);

} // namespace qkneser::pg
