#include "qkneser/kneser.hpp"

#include "qkneser/error.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <ostream>
#include <set>

namespace qkneser::kneser {

void validate_type(int n, std::span<const int> ranks)
{
    if (n < 3)
        throw Error(Errc::InvalidType, "ambient rank must be at least 3, got " + std::to_string(n));
    if (ranks.empty())
        throw Error(Errc::InvalidType, "empty vectorial type");
    int prev = 0;
    for (int r : ranks) {
        if (r <= prev || r >= n)
            throw Error(Errc::InvalidType, "type must be strictly increasing within [1, n-1]");
        prev = r;
    }
}

Flag::Flag(std::vector<Subspace> chain)
    : chain_(std::move(chain))
{
    if (chain_.empty())
        throw Error(Errc::InvalidType, "flag with no members");
    const int n = chain_.front().ambient_rank();
    for (std::size_t i = 0; i < chain_.size(); ++i) {
        const auto& s = chain_[i];
        if (s.ambient_rank() != n || s.field().q() != chain_.front().field().q())
            throw Error(Errc::InvalidType, "flag members live in different spaces");
        if (s.rank() < 1 || s.rank() >= n)
            throw Error(Errc::InvalidType, "flag members must be non-trivial proper subspaces");
        if (i > 0) {
            if (s.rank() <= chain_[i - 1].rank())
                throw Error(Errc::InvalidType, "flag ranks must strictly increase");
            if (!pg::contains(s, chain_[i - 1]))
                throw Error(Errc::InvalidType, "flag members are not nested");
        }
    }
}

std::vector<int> Flag::type() const
{
    std::vector<int> t;
    for (const auto& s : chain_)
        t.push_back(s.rank());
    return t;
}

std::size_t Flag::hash() const noexcept
{
    std::size_t h = 0;
    for (const auto& s : chain_)
        h = h * 1000003u ^ s.hash();
    return h;
}

std::vector<Flag> enumerate_flags(int n, std::span<const int> ranks, const Field& field)
{
    std::vector<Flag> out;
    for_each_flag(n, ranks, field, [&](const Flag& f) { out.push_back(f); });
    return out;
}

namespace {

void require_comparable(const Flag& a, const Flag& b)
{
    if (a.ambient_rank() != b.ambient_rank() || a.field().q() != b.field().q() || a.type() != b.type())
        throw Error(Errc::DimensionMismatch, "flags of different ambient space or type");
}

bool trivially_meets(const Subspace& a, const Subspace& b)
{
    std::vector<gf::Scalar> rows(a.basis().begin(), a.basis().end());
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return pg::matrix_rank(std::move(rows), a.ambient_rank(), a.field()) == a.rank() + b.rank();
}

} // namespace

bool general_position(const Flag& a, const Flag& b)
{
    require_comparable(a, b);
    for (const auto& u : a.chain())
        for (const auto& w : b.chain())
            if (!pg::meet(u, w).is_zero() && !pg::join(u, w).is_full())
                return false;
    return true;
}

bool general_position_fast(const Flag& a, const Flag& b)
{
    require_comparable(a, b);
    const int n = a.ambient_rank();
    if (a.size() != 2 || a[0].rank() * 2 + 1 != n || a[1].rank() != a[0].rank() + 1)
        throw Error(Errc::InvalidType, "fast adjacency needs type {d, d+1} in rank 2d+1");
    return trivially_meets(a[0], b[1]) && trivially_meets(b[0], a[1]);
}

FlagUniverse::FlagUniverse(int n, std::vector<int> ranks, const Field& field)
    : n_(n)
    , ranks_(std::move(ranks))
    , points_(field, n)
    , words_(points_.words())
{
    validate_type(n_, ranks_);
    if (ranks_.size() == 2 && ranks_[0] * 2 + 1 == n_ && ranks_[1] == ranks_[0] + 1)
        kneser_d_ = ranks_[0];
    for_each_flag(n_, ranks_, field, [&](const Flag& f) { flags_.push_back(f); });
    if (flags_.size() > std::numeric_limits<FlagId>::max())
        throw Error(Errc::TooLarge, "flag universe exceeds 32-bit ids");
    ids_.reserve(flags_.size());
    masks_.assign(flags_.size() * ranks_.size() * words_, 0);
    for (std::size_t i = 0; i < flags_.size(); ++i) {
        ids_.emplace(flags_[i], static_cast<FlagId>(i));
        for (std::size_t l = 0; l < ranks_.size(); ++l)
            points_.fill_mask(flags_[i][l], {masks_.data() + (i * ranks_.size() + l) * words_, words_});
    }
}

FlagUniverse FlagUniverse::kneser(int d, const Field& field)
{
    if (d < 1)
        throw Error(Errc::InvalidArgs, "kneser universe needs d >= 1");
    return FlagUniverse(2 * d + 1, {d, d + 1}, field);
}

std::optional<FlagId> FlagUniverse::id_of(const Flag& f) const
{
    auto it = ids_.find(f);
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

bool FlagUniverse::adjacent(FlagId a, FlagId b) const noexcept
{
    if (kneser_d_ != 0)
        return masks_disjoint(mask(a, 0), mask(b, 1)) && masks_disjoint(mask(b, 0), mask(a, 1));
    return adjacent_generic(a, b);
}

bool FlagUniverse::adjacent_generic(FlagId a, FlagId b) const noexcept
{
    const int q = field().q();
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        for (std::size_t j = 0; j < ranks_.size(); ++j) {
            auto ma = mask(a, i);
            auto mb = mask(b, j);
            std::uint64_t common = 0;
            for (std::size_t w = 0; w < words_; ++w)
                common += static_cast<std::uint64_t>(std::popcount(ma[w] & mb[w]));
            if (common == 0)
                continue;
            const int meet_rank = pg::rank_from_points(common, q);
            if (ranks_[i] + ranks_[j] - meet_rank != n_)
                return false;
        }
    }
    return true;
}

std::vector<FlagId> FlagUniverse::neighbors(FlagId id) const
{
    std::vector<FlagId> out;
    for (FlagId j = 0; j < flags_.size(); ++j)
        if (j != id && adjacent(id, j))
            out.push_back(j);
    return out;
}

std::vector<FlagId> FlagUniverse::neighbors(const Flag& f) const
{
    if (auto id = id_of(f))
        return neighbors(*id);
    std::vector<FlagId> out;
    for (FlagId j = 0; j < flags_.size(); ++j)
        if (general_position(f, flags_[j]))
            out.push_back(j);
    return out;
}

DimacsSummary export_dimacs(const FlagUniverse& universe, std::ostream& out, std::size_t vertex_cap, const Executor& exec)
{
    const std::size_t n = universe.size();
    if (n > vertex_cap)
        throw Error(Errc::TooLarge,
            std::to_string(n) + " vertices exceed the export cap of " + std::to_string(vertex_cap));
    std::vector<std::size_t> degree_above(n, 0);
    exec.parallel_for(n, 64, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (universe.adjacent(static_cast<FlagId>(i), static_cast<FlagId>(j)))
                    ++degree_above[i];
    });
    DimacsSummary s;
    s.vertices = n;
    for (auto c : degree_above)
        s.edges += c;
    out << "p edge " << n << ' ' << s.edges << '\n';
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (universe.adjacent(static_cast<FlagId>(i), static_cast<FlagId>(j)))
                out << "e " << i + 1 << ' ' << j + 1 << '\n';
    return s;
}

// Tangent-subspace counts ---------------------------------------------------

namespace {

std::uint64_t upow(int q, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= static_cast<std::uint64_t>(q);
    return r;
}

std::uint64_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return c;
}

std::uint32_t single_bit(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (const auto w = a[i] & b[i])
            return static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    return 0;
}

void record(std::vector<std::uint64_t>& seen, std::uint64_t v)
{
    if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
        seen.push_back(v);
        std::sort(seen.begin(), seen.end());
    }
}

} // namespace

bool TangentCounts::ok() const
{
    auto only = [](const std::vector<std::uint64_t>& v, std::uint64_t x) { return v.size() == 1 && v[0] == x; };
    return only(on_point, expect_on_point) && only(through_line, expect_through_line)
        && only(meeting_line, expect_meeting_line) && only(hyperplane_containing_u, 0)
        && only(hyperplane_other, expect_in_hyperplane);
}

TangentCounts count_tangent_subspaces(int d, const Field& field)
{
    std::vector<pg::Vector> rows;
    for (int i = 0; i < d + 2; ++i)
        rows.push_back(pg::unit_vector(2 * d + 1, i));
    return count_tangent_subspaces(d, field, pg::rref(rows, 2 * d + 1, field));
}

TangentCounts count_tangent_subspaces(int d, const Field& field, const Subspace& u)
{
    const int n = 2 * d + 1;
    if (d < 2 || u.ambient_rank() != n || u.rank() != d + 2)
        throw Error(Errc::InvalidArgs, "tangent counts need d >= 2 and a rank-(d+2) subspace of rank 2d+1");
    const int q = field.q();
    TangentCounts tc;
    tc.d = d;
    tc.q = q;
    tc.expect_on_point = upow(q, d * d - 1);
    tc.expect_through_line = upow(q, d * d - d - 2);
    tc.expect_meeting_line = upow(q, d * d - d - 1);
    tc.expect_in_hyperplane = upow(q, d * d - d);

    const pg::PointIndex pts(field, n);
    const std::size_t W = pts.words();
    const auto umask = pts.mask(u);
    const auto upoints = pts.points_of(u);

    // T(Y) for every point id Y, as flat mask lists
    std::vector<std::vector<std::uint64_t>> tangent(pts.size());
    pg::for_each_subspace(n, d, field, [&](const Subspace& pi) {
        const auto m = pts.mask(pi);
        if (popcount_and(m, umask) == 1) {
            auto& bucket = tangent[single_bit(m, umask)];
            bucket.insert(bucket.end(), m.begin(), m.end());
        }
    });
    auto tsize = [&](std::uint32_t y) { return tangent[y].size() / W; };
    auto tmask = [&](std::uint32_t y, std::size_t i) {
        return std::span<const std::uint64_t>(tangent[y].data() + i * W, W);
    };

    for (auto y : upoints) {
        record(tc.on_point, tsize(y));
        ++tc.cases_point;
    }

    pg::for_each_subspace(n, 2, field, [&](const Subspace& line) {
        const auto lm = pts.mask(line);
        if (popcount_and(lm, umask) != 1)
            return;
        const auto y0 = single_bit(lm, umask);
        std::uint64_t through = 0;
        for (std::size_t i = 0; i < tsize(y0); ++i)
            if (mask_subset(lm, tmask(y0, i)))
                ++through;
        record(tc.through_line, through);
        ++tc.cases_through;
        for (auto y : upoints) {
            if (y == y0)
                continue;
            std::uint64_t meeting = 0;
            for (std::size_t i = 0; i < tsize(y); ++i)
                if (popcount_and(lm, tmask(y, i)) == 1)
                    ++meeting;
            record(tc.meeting_line, meeting);
            ++tc.cases_meeting;
        }
    });

    pg::for_each_subspace(n, n - 1, field, [&](const Subspace& h) {
        const auto hm = pts.mask(h);
        const bool holds_u = mask_subset(umask, hm);
        for (auto y : upoints) {
            if (!mask_test(hm, y))
                continue;
            std::uint64_t inside = 0;
            for (std::size_t i = 0; i < tsize(y); ++i)
                if (mask_subset(tmask(y, i), hm))
                    ++inside;
            if (holds_u) {
                record(tc.hyperplane_containing_u, inside);
                ++tc.cases_hyp_in;
            } else {
                record(tc.hyperplane_other, inside);
                ++tc.cases_hyp_out;
            }
        }
    });
    return tc;
}

} // namespace qkneser::kneser
