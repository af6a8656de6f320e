#include "qkneser/pg.hpp"

#include "qkneser/error.hpp"

#include <algorithm>
#include <cassert>

namespace qkneser::pg {

namespace {

// In-place RREF of an m x n row-major matrix; returns the rank. The first
// `rank` rows hold the canonical basis afterwards.
int reduce(std::vector<Scalar>& a, int m, int n, const Field& f)
{
    const auto N = static_cast<std::size_t>(n);
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int pr = -1;
        for (int i = r; i < m; ++i) {
            if (a[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(c)] != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0)
            continue;
        Scalar* prow = a.data() + static_cast<std::size_t>(pr) * N;
        Scalar* rrow = a.data() + static_cast<std::size_t>(r) * N;
        if (pr != r)
            std::swap_ranges(prow, prow + n, rrow);
        const Scalar s = f.inv(rrow[c]);
        if (s != 1)
            for (int j = c; j < n; ++j)
                rrow[j] = f.mul(rrow[j], s);
        for (int i = 0; i < m; ++i) {
            if (i == r)
                continue;
            Scalar* row = a.data() + static_cast<std::size_t>(i) * N;
            const Scalar factor = row[c];
            if (factor == 0)
                continue;
            for (int j = c; j < n; ++j)
                row[j] = f.sub(row[j], f.mul(factor, rrow[j]));
        }
        ++r;
    }
    return r;
}

void require_same(const Subspace& a, const Subspace& b, const char* op)
{
    if (a.ambient_rank() != b.ambient_rank() || a.field().q() != b.field().q())
        throw Error(Errc::DimensionMismatch,
            std::string(op) + ": ambient ranks/fields differ (" + std::to_string(a.ambient_rank()) + " vs "
                + std::to_string(b.ambient_rank()) + ")");
}

} // namespace

Subspace::Subspace(const Field& field, int n)
    : field_(&field)
    , n_(n)
{
    if (n < 0)
        throw Error(Errc::InvalidArgs, "negative ambient rank");
}

Subspace Subspace::full(const Field& field, int n)
{
    std::vector<Scalar> id(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        id[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = 1;
    return rref_flat(std::move(id), n, field);
}

std::vector<Vector> Subspace::rows() const
{
    std::vector<Vector> out;
    for (int i = 0; i < r_; ++i) {
        auto rw = row(i);
        out.emplace_back(rw.begin(), rw.end());
    }
    return out;
}

std::vector<int> Subspace::pivots() const
{
    std::vector<int> p;
    p.reserve(static_cast<std::size_t>(r_));
    for (int i = 0; i < r_; ++i) {
        auto rw = row(i);
        for (int c = 0; c < n_; ++c) {
            if (rw[static_cast<std::size_t>(c)] != 0) {
                p.push_back(c);
                break;
            }
        }
    }
    return p;
}

std::size_t Subspace::hash() const noexcept
{
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n_ * 131 + r_);
    for (Scalar s : rows_) {
        h ^= s;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) noexcept
{
    if (auto c = a.n_ <=> b.n_; c != 0)
        return c;
    if (auto c = a.r_ <=> b.r_; c != 0)
        return c;
    const auto pa = a.pivots();
    const auto pb = b.pivots();
    if (auto c = pa <=> pb; c != 0)
        return c;
    return a.rows_ <=> b.rows_;
}

Subspace rref_flat(std::vector<Scalar> rows, int n, const Field& field)
{
    if (n < 0 || (n == 0 && !rows.empty()) || (n > 0 && rows.size() % static_cast<std::size_t>(n) != 0))
        throw Error(Errc::DimensionMismatch, "row buffer is not a whole number of length-" + std::to_string(n) + " rows");
    for (Scalar s : rows)
        if (s >= field.q())
            throw Error(Errc::InvalidArgs, "entry " + std::to_string(s) + " outside GF(" + std::to_string(field.q()) + ")");
    const int m = n == 0 ? 0 : static_cast<int>(rows.size() / static_cast<std::size_t>(n));
    const int r = reduce(rows, m, n, field);
    rows.resize(static_cast<std::size_t>(r) * static_cast<std::size_t>(n));
    Subspace s(field, n);
    s.r_ = r;
    s.rows_ = std::move(rows);
    return s;
}

Subspace rref(std::span<const Vector> rows, int n, const Field& field)
{
    std::vector<Scalar> flat;
    flat.reserve(rows.size() * static_cast<std::size_t>(std::max(n, 0)));
    for (const auto& v : rows) {
        if (static_cast<int>(v.size()) != n)
            throw Error(Errc::DimensionMismatch,
                "row of length " + std::to_string(v.size()) + " in ambient rank " + std::to_string(n));
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return rref_flat(std::move(flat), n, field);
}

int matrix_rank(std::vector<Scalar> rows, int n, const Field& field)
{
    if (n <= 0)
        return 0;
    const int m = static_cast<int>(rows.size() / static_cast<std::size_t>(n));
    return reduce(rows, m, n, field);
}

Subspace join(const Subspace& a, const Subspace& b)
{
    require_same(a, b, "join");
    std::vector<Scalar> flat(a.basis().begin(), a.basis().end());
    flat.insert(flat.end(), b.basis().begin(), b.basis().end());
    return rref_flat(std::move(flat), a.ambient_rank(), a.field());
}

// Zassenhaus: RREF of [A | A ; B | 0]; rows with a zero left half carry a
// basis of the intersection in their right half.
Subspace meet(const Subspace& a, const Subspace& b)
{
    require_same(a, b, "meet");
    const int n = a.ambient_rank();
    const auto& f = a.field();
    if (a.is_zero() || b.is_zero())
        return Subspace(f, n);
    const int m = a.rank() + b.rank();
    const auto W = static_cast<std::size_t>(2 * n);
    std::vector<Scalar> z(static_cast<std::size_t>(m) * W, 0);
    for (int i = 0; i < a.rank(); ++i) {
        auto rw = a.row(i);
        std::copy(rw.begin(), rw.end(), z.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * W));
        std::copy(rw.begin(), rw.end(), z.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * W + static_cast<std::size_t>(n)));
    }
    for (int i = 0; i < b.rank(); ++i) {
        auto rw = b.row(i);
        std::copy(rw.begin(), rw.end(),
            z.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(a.rank() + i) * W));
    }
    const int r = reduce(z, m, 2 * n, f);
    std::vector<Scalar> out;
    for (int i = 0; i < r; ++i) {
        const Scalar* rw = z.data() + static_cast<std::size_t>(i) * W;
        if (std::all_of(rw, rw + n, [](Scalar s) { return s == 0; }))
            out.insert(out.end(), rw + n, rw + 2 * n);
    }
    return rref_flat(std::move(out), n, f);
}

bool in_span(const Subspace& a, std::span<const Scalar> v)
{
    if (static_cast<int>(v.size()) != a.ambient_rank())
        throw Error(Errc::DimensionMismatch, "vector length differs from ambient rank");
    const auto& f = a.field();
    Vector w(v.begin(), v.end());
    const auto piv = a.pivots();
    for (int i = 0; i < a.rank(); ++i) {
        const Scalar c = w[static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])];
        if (c == 0)
            continue;
        auto rw = a.row(i);
        for (std::size_t j = 0; j < w.size(); ++j)
            w[j] = f.sub(w[j], f.mul(c, rw[j]));
    }
    return std::all_of(w.begin(), w.end(), [](Scalar s) { return s == 0; });
}

bool contains(const Subspace& a, const Subspace& b)
{
    require_same(a, b, "contains");
    if (b.rank() > a.rank())
        return false;
    for (int i = 0; i < b.rank(); ++i)
        if (!in_span(a, b.row(i)))
            return false;
    return true;
}

Subspace dual(const Subspace& a)
{
    const int n = a.ambient_rank();
    const auto& f = a.field();
    const auto piv = a.pivots();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : piv)
        is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Scalar> out;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)])
            continue;
        Vector x(static_cast<std::size_t>(n), 0);
        x[static_cast<std::size_t>(c)] = 1;
        for (int i = 0; i < a.rank(); ++i)
            x[static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] = f.neg(a.row(i)[static_cast<std::size_t>(c)]);
        out.insert(out.end(), x.begin(), x.end());
    }
    return rref_flat(std::move(out), n, f);
}

Subspace transform(const Subspace& a, std::span<const Scalar> matrix)
{
    const int n = a.ambient_rank();
    const auto N = static_cast<std::size_t>(n);
    if (matrix.size() != N * N)
        throw Error(Errc::DimensionMismatch, "transform matrix is not n x n");
    const auto& f = a.field();
    std::vector<Scalar> out(static_cast<std::size_t>(a.rank()) * N, 0);
    for (int i = 0; i < a.rank(); ++i) {
        auto rw = a.row(i);
        for (std::size_t k = 0; k < N; ++k) {
            if (rw[k] == 0)
                continue;
            for (std::size_t j = 0; j < N; ++j)
                out[static_cast<std::size_t>(i) * N + j]
                    = f.add(out[static_cast<std::size_t>(i) * N + j], f.mul(rw[k], matrix[k * N + j]));
        }
    }
    return rref_flat(std::move(out), n, f);
}

Vector unit_vector(int n, int i)
{
    Vector v(static_cast<std::size_t>(n), 0);
    v.at(static_cast<std::size_t>(i)) = 1;
    return v;
}

Subspace span_of_units(const Field& field, int n, std::initializer_list<int> indices)
{
    std::vector<Vector> rows;
    for (int i : indices)
        rows.push_back(unit_vector(n, i));
    return rref(rows, n, field);
}

std::string to_string(const Subspace& s)
{
    std::string out = "[";
    for (int i = 0; i < s.rank(); ++i) {
        out += i ? ",[" : "[";
        auto rw = s.row(i);
        for (std::size_t j = 0; j < rw.size(); ++j)
            out += (j ? "," : "") + std::to_string(rw[j]);
        out += "]";
    }
    return out + "]";
}

SubspaceStream::SubspaceStream(int n, int r, const Field& field)
    : field_(&field)
    , n_(n)
    , r_(r)
{
    if (n < 0 || r < 0 || r > n)
        throw Error(Errc::InvalidArgs, "enumerate_subspaces needs 0 <= r <= n");
    pivots_.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        pivots_[static_cast<std::size_t>(i)] = i;
    reset_free();
}

void SubspaceStream::reset_free()
{
    free_slots_.clear();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n_), false);
    for (int p : pivots_)
        is_pivot[static_cast<std::size_t>(p)] = true;
    for (int i = 0; i < r_; ++i)
        for (int c = pivots_[static_cast<std::size_t>(i)] + 1; c < n_; ++c)
            if (!is_pivot[static_cast<std::size_t>(c)])
                free_slots_.push_back(static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c));
    digits_.assign(free_slots_.size(), 0);
}

bool SubspaceStream::advance_pivots()
{
    int i = r_ - 1;
    while (i >= 0 && pivots_[static_cast<std::size_t>(i)] == n_ - r_ + i)
        --i;
    if (i < 0)
        return false;
    ++pivots_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r_; ++j)
        pivots_[static_cast<std::size_t>(j)] = pivots_[static_cast<std::size_t>(j - 1)] + 1;
    reset_free();
    return true;
}

std::optional<Subspace> SubspaceStream::next()
{
    if (done_)
        return std::nullopt;
    const auto N = static_cast<std::size_t>(n_);
    std::vector<Scalar> buf(static_cast<std::size_t>(r_) * N, 0);
    for (int i = 0; i < r_; ++i)
        buf[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])] = 1;
    for (std::size_t k = 0; k < free_slots_.size(); ++k)
        buf[free_slots_[k]] = digits_[k];
    Subspace out = rref_flat(std::move(buf), n_, *field_);

    // odometer over free entries, last slot fastest
    std::size_t k = digits_.size();
    bool carried = true;
    while (k > 0 && carried) {
        --k;
        if (++digits_[k] == field_->q())
            digits_[k] = 0;
        else
            carried = false;
    }
    if (carried && !advance_pivots())
        done_ = true;
    return out;
}

SubspaceStream enumerate_subspaces(int n, int r, const Field& field) { return SubspaceStream(n, r, field); }

std::vector<Subspace> all_subspaces(int n, int r, const Field& field)
{
    std::vector<Subspace> out;
    for_each_subspace(n, r, field, [&](const Subspace& s) { out.push_back(s); });
    return out;
}

std::uint64_t points_in_rank(int rank, int q)
{
    std::uint64_t total = 0, pw = 1;
    for (int i = 0; i < rank; ++i) {
        total += pw;
        pw *= static_cast<std::uint64_t>(q);
    }
    return total;
}

int rank_from_points(std::uint64_t points, int q)
{
    int r = 0;
    while (points_in_rank(r, q) < points)
        ++r;
    assert(points_in_rank(r, q) == points);
    return r;
}

PointIndex::PointIndex(const Field& field, int n)
    : field_(&field)
    , n_(n)
{
    offset_.resize(static_cast<std::size_t>(n) + 1);
    std::uint64_t acc = 0;
    for (int c = 0; c < n; ++c) {
        offset_[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(acc);
        std::uint64_t block = 1;
        for (int j = c + 1; j < n; ++j)
            block *= static_cast<std::uint64_t>(field.q());
        acc += block;
    }
    offset_[static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(acc);
    count_ = static_cast<std::size_t>(acc);
    words_ = (count_ + 63) / 64;
}

std::uint32_t PointIndex::id_of(std::span<const Scalar> v) const
{
    if (static_cast<int>(v.size()) != n_)
        throw Error(Errc::DimensionMismatch, "point vector length differs from ambient rank");
    int c = 0;
    while (c < n_ && v[static_cast<std::size_t>(c)] == 0)
        ++c;
    if (c == n_)
        throw Error(Errc::InvalidArgs, "zero vector spans no point");
    const Scalar s = field_->inv(v[static_cast<std::size_t>(c)]);
    std::uint32_t tail = 0;
    for (int j = c + 1; j < n_; ++j)
        tail = tail * static_cast<std::uint32_t>(field_->q()) + field_->mul(v[static_cast<std::size_t>(j)], s);
    return offset_[static_cast<std::size_t>(c)] + tail;
}

Vector PointIndex::point(std::uint32_t id) const
{
    if (id >= count_)
        throw Error(Errc::InvalidArgs, "point id out of range");
    int c = 0;
    while (offset_[static_cast<std::size_t>(c) + 1] <= id)
        ++c;
    std::uint32_t tail = id - offset_[static_cast<std::size_t>(c)];
    Vector v(static_cast<std::size_t>(n_), 0);
    v[static_cast<std::size_t>(c)] = 1;
    for (int j = n_ - 1; j > c; --j) {
        v[static_cast<std::size_t>(j)] = static_cast<Scalar>(tail % static_cast<std::uint32_t>(field_->q()));
        tail /= static_cast<std::uint32_t>(field_->q());
    }
    return v;
}

std::vector<std::uint32_t> PointIndex::points_of(const Subspace& s) const
{
    if (s.ambient_rank() != n_ || s.field().q() != field_->q())
        throw Error(Errc::DimensionMismatch, "subspace does not live in this point index");
    std::vector<std::uint32_t> out;
    const int r = s.rank();
    const int q = field_->q();
    const auto N = static_cast<std::size_t>(n_);
    Vector v(N);
    // coefficient vectors whose first nonzero entry is 1 at position lead
    for (int lead = 0; lead < r; ++lead) {
        std::vector<Scalar> coef(static_cast<std::size_t>(r - lead - 1), 0);
        for (;;) {
            auto lrow = s.row(lead);
            std::copy(lrow.begin(), lrow.end(), v.begin());
            for (std::size_t t = 0; t < coef.size(); ++t) {
                if (coef[t] == 0)
                    continue;
                auto rw = s.row(lead + 1 + static_cast<int>(t));
                for (std::size_t j = 0; j < N; ++j)
                    v[j] = field_->add(v[j], field_->mul(coef[t], rw[j]));
            }
            out.push_back(id_of(v));
            std::size_t k = coef.size();
            bool carried = true;
            while (k > 0 && carried) {
                --k;
                if (++coef[k] == q)
                    coef[k] = 0;
                else
                    carried = false;
            }
            if (carried)
                break;
        }
    }
    return out;
}

void PointIndex::fill_mask(const Subspace& s, std::span<std::uint64_t> out) const
{
    std::fill(out.begin(), out.end(), 0);
    for (std::uint32_t id : points_of(s))
        out[id / 64] |= std::uint64_t {1} << (id % 64);
}

std::vector<std::uint64_t> PointIndex::mask(const Subspace& s) const
{
    std::vector<std::uint64_t> m(words_, 0);
    fill_mask(s, m);
    return m;
}

} // namespace qkneser::pg
