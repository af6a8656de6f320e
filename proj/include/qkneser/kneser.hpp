#pragma once

#include "qkneser/executor.hpp"
#include "qkneser/pg.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace qkneser::kneser {

using pg::Field;
using pg::Subspace;

/// Throws Error(InvalidType) unless n >= 3 and ranks is strictly increasing
/// inside [1, n-1] and nonempty.
void validate_type(int n, std::span<const int> ranks);

/// A chain of nested subspaces, one per rank of its vectorial type.
class Flag {
public:
    /// Throws Error(InvalidType) when the chain is empty, not strictly
    /// increasing in rank, not nested, or mixes ambient spaces.
    explicit Flag(std::vector<Subspace> chain);

    int ambient_rank() const noexcept { return chain_.front().ambient_rank(); }
    const Field& field() const noexcept { return chain_.front().field(); }
    std::vector<int> type() const;
    std::size_t size() const noexcept { return chain_.size(); }
    const std::vector<Subspace>& chain() const noexcept { return chain_; }
    const Subspace& operator[](std::size_t i) const noexcept { return chain_[i]; }

    std::size_t hash() const noexcept;
    friend bool operator==(const Flag&, const Flag&) = default;

private:
    std::vector<Subspace> chain_;
};

struct FlagHash {
    std::size_t operator()(const Flag& f) const noexcept { return f.hash(); }
};

/// Every flag of type `ranks` in GF(q)^n, once each: the lowest member in
/// subspace enumeration order, then each extension in quotient-space order.
template <class Fn>
void for_each_flag(int n, std::span<const int> ranks, const Field& field, Fn&& fn);

std::vector<Flag> enumerate_flags(int n, std::span<const int> ranks, const Field& field);

/// Reference adjacency: every cross pair of members meets in zero or spans
/// the whole space. Throws Error(DimensionMismatch) on mismatched flags.
bool general_position(const Flag& a, const Flag& b);

/// Adjacency for type {d, d+1} in rank 2d+1: the rank-d member of each
/// flag meets the rank-(d+1) member of the other in zero.
bool general_position_fast(const Flag& a, const Flag& b);

using FlagId = std::uint32_t;

/// Dense index of all flags of one type, with point-set masks of every
/// chain member so adjacency tests are a few word ANDs.
class FlagUniverse {
public:
    FlagUniverse(int n, std::vector<int> ranks, const Field& field);

    /// The flags of type {d, d+1} in GF(q)^{2d+1}.
    static FlagUniverse kneser(int d, const Field& field);

    int ambient_rank() const noexcept { return n_; }
    const std::vector<int>& ranks() const noexcept { return ranks_; }
    const Field& field() const noexcept { return points_.field(); }
    const pg::PointIndex& points() const noexcept { return points_; }
    /// d when this is the {d, d+1} / 2d+1 family, else 0.
    int kneser_d() const noexcept { return kneser_d_; }

    std::size_t size() const noexcept { return flags_.size(); }
    const Flag& flag(FlagId id) const { return flags_.at(id); }
    const std::vector<Flag>& flags() const noexcept { return flags_; }
    std::optional<FlagId> id_of(const Flag& f) const;

    std::size_t words() const noexcept { return words_; }
    std::span<const std::uint64_t> mask(FlagId id, std::size_t level) const noexcept
    {
        return {masks_.data() + (static_cast<std::size_t>(id) * ranks_.size() + level) * words_, words_};
    }

    bool adjacent(FlagId a, FlagId b) const noexcept;
    /// All neighbours of a flag in id order; the flag need not be indexed.
    std::vector<FlagId> neighbors(const Flag& f) const;
    std::vector<FlagId> neighbors(FlagId id) const;

private:
    bool adjacent_generic(FlagId a, FlagId b) const noexcept;

    int n_;
    std::vector<int> ranks_;
    int kneser_d_ = 0;
    pg::PointIndex points_;
    std::size_t words_;
    std::vector<Flag> flags_;
    std::unordered_map<Flag, FlagId, FlagHash> ids_;
    std::vector<std::uint64_t> masks_;
};

inline bool masks_disjoint(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i])
            return false;
    return true;
}

inline bool mask_subset(std::span<const std::uint64_t> sub, std::span<const std::uint64_t> super) noexcept
{
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (sub[i] & ~super[i])
            return false;
    return true;
}

inline bool mask_test(std::span<const std::uint64_t> m, std::uint32_t bit) noexcept
{
    return (m[bit / 64] >> (bit % 64)) & 1u;
}

inline constexpr std::size_t default_dimacs_cap = 20000;

struct DimacsSummary {
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

/// Writes "p edge N M" then "e u v" (1-based ids, u < v, in id order).
/// Throws Error(TooLarge) when the universe exceeds vertex_cap.
DimacsSummary export_dimacs(const FlagUniverse& universe, std::ostream& out,
    std::size_t vertex_cap = default_dimacs_cap, const Executor& exec = Executor(1));

// Tangent-subspace counts ---------------------------------------------------

/// For a rank-(d+2) subspace U of GF(q)^{2d+1} and a point Y of U, T(Y) is
/// the set of rank-d subspaces meeting U exactly in Y. The counts below are
/// gathered over every Y of U and every admissible line / hyperplane.
struct TangentCounts {
    int d = 0;
    int q = 0;
    std::uint64_t expect_on_point = 0;       ///< |T(Y)| = q^{d^2-1}
    std::uint64_t expect_through_line = 0;   ///< line meeting U only in Y: q^{d^2-d-2}
    std::uint64_t expect_meeting_line = 0;   ///< line meeting U in another point: q^{d^2-d-1}
    std::uint64_t expect_in_hyperplane = 0;  ///< hyperplane through Y not containing U: q^{d^2-d}

    // distinct values observed, with how many configurations were examined
    std::vector<std::uint64_t> on_point, through_line, meeting_line, hyperplane_containing_u, hyperplane_other;
    std::size_t cases_point = 0, cases_through = 0, cases_meeting = 0, cases_hyp_in = 0, cases_hyp_out = 0;

    bool ok() const;
};

TangentCounts count_tangent_subspaces(int d, const Field& field);
TangentCounts count_tangent_subspaces(int d, const Field& field, const Subspace& u);

// ---------------------------------------------------------------------------

namespace detail {

template <class Fn>
void extend_flag(std::vector<Subspace>& chain, std::span<const int> ranks, std::size_t level, const Field& field, Fn& fn)
{
    if (level == ranks.size()) {
        fn(Flag(chain));
        return;
    }
    // copies: push_back below may reallocate the chain
    const Subspace top = chain.back();
    const int n = top.ambient_rank();
    const auto piv = top.pivots();
    std::vector<int> free_cols;
    for (int c = 0, k = 0; c < n; ++c) {
        if (k < static_cast<int>(piv.size()) && piv[static_cast<std::size_t>(k)] == c)
            ++k;
        else
            free_cols.push_back(c);
    }
    const int qn = static_cast<int>(free_cols.size());
    const int step = ranks[level] - top.rank();
    pg::for_each_subspace(qn, step, field, [&](const Subspace& s) {
        std::vector<gf::Scalar> rows(top.basis().begin(), top.basis().end());
        for (int i = 0; i < s.rank(); ++i) {
            std::vector<gf::Scalar> lifted(static_cast<std::size_t>(n), 0);
            auto rw = s.row(i);
            for (int j = 0; j < qn; ++j)
                lifted[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(j)])] = rw[static_cast<std::size_t>(j)];
            rows.insert(rows.end(), lifted.begin(), lifted.end());
        }
        chain.push_back(pg::rref_flat(std::move(rows), n, field));
        extend_flag(chain, ranks, level + 1, field, fn);
        chain.pop_back();
    });
}

} // namespace detail

template <class Fn>
void for_each_flag(int n, std::span<const int> ranks, const Field& field, Fn&& fn)
{
    validate_type(n, ranks);
    pg::for_each_subspace(n, ranks[0], field, [&](const Subspace& low) {
        std::vector<Subspace> chain {low};
        detail::extend_flag(chain, ranks, 1, field, fn);
    });
}

} // namespace qkneser::kneser
