#include "qkneser/indsets.hpp"

#include "qkneser/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>

namespace qkneser::indsets {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::int64_t upow(std::int64_t q, int e)
{
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= q;
    return r;
}

Subspace point_subspace(const pg::PointIndex& pts, std::uint32_t id)
{
    const std::vector<pg::Vector> rows {pts.point(id)};
    return pg::rref(rows, pts.ambient_rank(), pts.field());
}

void sort_unique(std::vector<Subspace>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::InvalidDescriptor, what); }

} // namespace

int IndSetDescriptor::q() const { return base().field().q(); }

bool IndSetDescriptor::point_based() const
{
    return std::holds_alternative<PointPencil>(shape) || std::holds_alternative<GenericOnly>(shape)
        || std::holds_alternative<PointLine>(shape) || std::holds_alternative<PointHyperplane>(shape)
        || std::holds_alternative<PointFamily>(shape);
}

const Subspace& IndSetDescriptor::base() const
{
    return std::visit(overloaded {
                          [](const PointPencil& s) -> const Subspace& { return s.point; },
                          [](const GenericOnly& s) -> const Subspace& { return s.point; },
                          [](const PointLine& s) -> const Subspace& { return s.point; },
                          [](const PointHyperplane& s) -> const Subspace& { return s.point; },
                          [](const PointFamily& s) -> const Subspace& { return s.point; },
                          [](const DualPointPencil& s) -> const Subspace& { return s.hyperplane; },
                          [](const DualGenericOnly& s) -> const Subspace& { return s.hyperplane; },
                          [](const HyperplaneColine& s) -> const Subspace& { return s.hyperplane; },
                          [](const HyperplanePoint& s) -> const Subspace& { return s.hyperplane; },
                          [](const HyperplaneFamily& s) -> const Subspace& { return s.hyperplane; },
                      },
        shape);
}

std::string_view IndSetDescriptor::variant_name() const
{
    return std::visit(overloaded {
                          [](const PointPencil&) { return std::string_view("point_pencil"); },
                          [](const GenericOnly&) { return std::string_view("generic_only"); },
                          [](const PointLine&) { return std::string_view("point_line"); },
                          [](const PointHyperplane&) { return std::string_view("point_hyperplane"); },
                          [](const PointFamily&) { return std::string_view("point_family"); },
                          [](const DualPointPencil&) { return std::string_view("dual_point_pencil"); },
                          [](const DualGenericOnly&) { return std::string_view("dual_generic_only"); },
                          [](const HyperplaneColine&) { return std::string_view("hyperplane_coline"); },
                          [](const HyperplanePoint&) { return std::string_view("hyperplane_point"); },
                          [](const HyperplaneFamily&) { return std::string_view("hyperplane_family"); },
                      },
        shape);
}

qcalc::QInt IndSetDescriptor::expected_special_size() const
{
    const std::int64_t qq = q();
    const qcalc::QInt qd = qcalc::ipow(qcalc::QInt(qq), static_cast<unsigned>(d));
    return std::visit(overloaded {
                          [&](const PointLine&) { return qcalc::gauss(2 * d - 1, d - 1, qq) * qd; },
                          [&](const PointHyperplane&) { return qcalc::gauss(2 * d - 1, d - 1, qq) * qd; },
                          [&](const HyperplaneColine&) { return qcalc::gauss(2 * d - 1, d, qq) * qd; },
                          [&](const HyperplanePoint&) { return qcalc::gauss(2 * d - 1, d, qq) * qd; },
                          [&](const PointFamily& s) { return qcalc::QInt(s.family.size()) * qd; },
                          [&](const HyperplaneFamily& s) { return qcalc::QInt(s.family.size()) * qd; },
                          [](const auto&) { return qcalc::QInt(0); },
                      },
        shape);
}

void validate(const IndSetDescriptor& desc)
{
    const int d = desc.d;
    if (d < 1)
        invalid("d must be at least 1");
    const int n = 2 * d + 1;
    const int q = desc.base().field().q();
    auto check = [&](const Subspace& s, int rank, const char* name) {
        if (s.ambient_rank() != n)
            invalid(std::string(name) + " lives in rank " + std::to_string(s.ambient_rank()) + ", expected " + std::to_string(n));
        if (s.field().q() != q)
            invalid(std::string(name) + " is over a different field");
        if (s.rank() != rank)
            invalid(std::string(name) + " has rank " + std::to_string(s.rank()) + ", expected " + std::to_string(rank));
    };
    auto check_point = [&](const Subspace& p) { check(p, 1, "point"); };
    auto check_hyperplane = [&](const Subspace& h) { check(h, 2 * d, "hyperplane"); };

    std::visit(overloaded {
                   [&](const PointPencil& s) { check_point(s.point); },
                   [&](const GenericOnly& s) { check_point(s.point); },
                   [&](const PointLine& s) {
                       check_point(s.point);
                       check(s.line, 2, "line");
                       if (!pg::contains(s.line, s.point))
                           invalid("point does not lie on the line");
                   },
                   [&](const PointHyperplane& s) {
                       check_point(s.point);
                       check_hyperplane(s.hyperplane);
                       if (!pg::contains(s.hyperplane, s.point))
                           invalid("point does not lie in the hyperplane");
                   },
                   [&](const PointFamily& s) {
                       check_point(s.point);
                       for (std::size_t i = 0; i < s.family.size(); ++i) {
                           check(s.family[i], d + 1, "family member");
                           if (!pg::contains(s.family[i], s.point))
                               invalid("family member " + std::to_string(i) + " misses the base point");
                           for (std::size_t j = 0; j < i; ++j)
                               if (pg::meet(s.family[i], s.family[j]).rank() < 2)
                                   invalid("family members " + std::to_string(j) + " and " + std::to_string(i)
                                       + " meet in less than a line");
                       }
                   },
                   [&](const DualPointPencil& s) { check_hyperplane(s.hyperplane); },
                   [&](const DualGenericOnly& s) { check_hyperplane(s.hyperplane); },
                   [&](const HyperplaneColine& s) {
                       check_hyperplane(s.hyperplane);
                       check(s.coline, 2 * d - 1, "coline");
                       if (!pg::contains(s.hyperplane, s.coline))
                           invalid("coline is not inside the hyperplane");
                   },
                   [&](const HyperplanePoint& s) {
                       check_hyperplane(s.hyperplane);
                       check_point(s.point);
                       if (!pg::contains(s.hyperplane, s.point))
                           invalid("point does not lie in the hyperplane");
                   },
                   [&](const HyperplaneFamily& s) {
                       check_hyperplane(s.hyperplane);
                       for (std::size_t i = 0; i < s.family.size(); ++i) {
                           check(s.family[i], d, "family member");
                           if (!pg::contains(s.hyperplane, s.family[i]))
                               invalid("family member " + std::to_string(i) + " is not inside the hyperplane");
                           for (std::size_t j = 0; j < i; ++j)
                               if (pg::meet(s.family[i], s.family[j]).is_zero())
                                   invalid("family members " + std::to_string(j) + " and " + std::to_string(i)
                                       + " are disjoint");
                       }
                   },
               },
        desc.shape);
}

IndSetDescriptor normalized(IndSetDescriptor desc)
{
    if (auto* f = std::get_if<PointFamily>(&desc.shape))
        sort_unique(f->family);
    if (auto* f = std::get_if<HyperplaneFamily>(&desc.shape))
        sort_unique(f->family);
    return desc;
}

IndSetDescriptor dual(const IndSetDescriptor& desc)
{
    auto duals = [](const std::vector<Subspace>& v) {
        std::vector<Subspace> out;
        out.reserve(v.size());
        for (const auto& s : v)
            out.push_back(pg::dual(s));
        sort_unique(out);
        return out;
    };
    IndSetDescriptor out {desc.d,
        std::visit(overloaded {
                       [](const PointPencil& s) -> Shape { return DualPointPencil {pg::dual(s.point)}; },
                       [](const GenericOnly& s) -> Shape { return DualGenericOnly {pg::dual(s.point)}; },
                       [](const PointLine& s) -> Shape { return HyperplaneColine {pg::dual(s.point), pg::dual(s.line)}; },
                       [](const PointHyperplane& s) -> Shape {
                           return HyperplanePoint {pg::dual(s.point), pg::dual(s.hyperplane)};
                       },
                       [&](const PointFamily& s) -> Shape { return HyperplaneFamily {pg::dual(s.point), duals(s.family)}; },
                       [](const DualPointPencil& s) -> Shape { return PointPencil {pg::dual(s.hyperplane)}; },
                       [](const DualGenericOnly& s) -> Shape { return GenericOnly {pg::dual(s.hyperplane)}; },
                       [](const HyperplaneColine& s) -> Shape {
                           return PointLine {pg::dual(s.hyperplane), pg::dual(s.coline)};
                       },
                       [](const HyperplanePoint& s) -> Shape {
                           return PointHyperplane {pg::dual(s.hyperplane), pg::dual(s.point)};
                       },
                       [&](const HyperplaneFamily& s) -> Shape {
                           return PointFamily {pg::dual(s.hyperplane), duals(s.family)};
                       },
                   },
            desc.shape)};
    return out;
}

Flag dual_flag(const Flag& f)
{
    std::vector<Subspace> chain;
    for (auto it = f.chain().rbegin(); it != f.chain().rend(); ++it)
        chain.push_back(pg::dual(*it));
    return Flag(std::move(chain));
}

Part part_of(const IndSetDescriptor& desc, const Flag& f)
{
    if (f.size() != 2 || f.ambient_rank() != 2 * desc.d + 1 || f[0].rank() != desc.d)
        throw Error(Errc::DimensionMismatch, "flag is not of type {d, d+1} in rank 2d+1");
    const Subspace& pi = f[0];
    const Subspace& tau = f[1];
    if (desc.point_based()) {
        if (pg::contains(pi, desc.base()))
            return Part::Generic;
    } else if (pg::contains(desc.base(), tau)) {
        return Part::Generic;
    }
    const bool special = std::visit(overloaded {
                                        [&](const PointLine& s) { return pg::contains(tau, s.line); },
                                        [&](const PointHyperplane& s) {
                                            return pg::contains(tau, s.point) && pg::contains(s.hyperplane, tau);
                                        },
                                        [&](const PointFamily& s) {
                                            return std::binary_search(s.family.begin(), s.family.end(), tau);
                                        },
                                        [&](const HyperplaneColine& s) { return pg::contains(s.coline, pi); },
                                        [&](const HyperplanePoint& s) {
                                            return pg::contains(pi, s.point) && pg::contains(s.hyperplane, pi);
                                        },
                                        [&](const HyperplaneFamily& s) {
                                            return std::binary_search(s.family.begin(), s.family.end(), pi);
                                        },
                                        [](const auto&) { return false; },
                                    },
        desc.shape);
    return special ? Part::Special : Part::None;
}

Membership::Membership(const IndSetDescriptor& desc, const FlagUniverse& universe)
    : universe_(&universe)
    , kind_(desc.shape.index())
    , point_based_(desc.point_based())
{
    if (universe.kneser_d() != desc.d || universe.field().q() != desc.q())
        throw Error(Errc::DimensionMismatch, "descriptor and universe disagree on (d, q)");
    const auto& pts = universe.points();
    auto point_id = [&](const Subspace& p) { return pts.id_of(p.row(0)); };
    if (point_based_)
        base_point_ = point_id(desc.base());
    else
        base_mask_ = pts.mask(desc.base());
    std::visit(overloaded {
                   [&](const PointLine& s) { aux_mask_ = pts.mask(s.line); },
                   [&](const PointHyperplane& s) { aux_mask_ = pts.mask(s.hyperplane); },
                   [&](const PointFamily& s) { family_.insert(s.family.begin(), s.family.end()); },
                   [&](const HyperplaneColine& s) { aux_mask_ = pts.mask(s.coline); },
                   [&](const HyperplanePoint& s) { aux_point_ = point_id(s.point); },
                   [&](const HyperplaneFamily& s) { family_.insert(s.family.begin(), s.family.end()); },
                   [](const auto&) {},
               },
        desc.shape);
}

Part Membership::part(FlagId id) const
{
    const auto pi = universe_->mask(id, 0);
    const auto tau = universe_->mask(id, 1);
    if (point_based_ ? kneser::mask_test(pi, base_point_) : kneser::mask_subset(tau, base_mask_))
        return Part::Generic;
    bool special = false;
    switch (kind_) {
    case 2: // PointLine
        special = kneser::mask_subset(aux_mask_, tau);
        break;
    case 3: // PointHyperplane
        special = kneser::mask_test(tau, base_point_) && kneser::mask_subset(tau, aux_mask_);
        break;
    case 4: // PointFamily
        special = family_.count(universe_->flag(id)[1]) != 0;
        break;
    case 5: // HyperplaneFamily
        special = family_.count(universe_->flag(id)[0]) != 0;
        break;
    case 8: // HyperplaneColine
        special = kneser::mask_subset(pi, aux_mask_);
        break;
    case 9: // HyperplanePoint
        special = kneser::mask_test(pi, aux_point_) && kneser::mask_subset(pi, base_mask_);
        break;
    default:
        break;
    }
    return special ? Part::Special : Part::None;
}

static_assert(std::is_same_v<std::variant_alternative_t<2, Shape>, PointLine>);
static_assert(std::is_same_v<std::variant_alternative_t<3, Shape>, PointHyperplane>);
static_assert(std::is_same_v<std::variant_alternative_t<4, Shape>, PointFamily>);
static_assert(std::is_same_v<std::variant_alternative_t<5, Shape>, HyperplaneFamily>);
static_assert(std::is_same_v<std::variant_alternative_t<8, Shape>, HyperplaneColine>);
static_assert(std::is_same_v<std::variant_alternative_t<9, Shape>, HyperplanePoint>);

std::vector<FlagId> SplitSet::all() const
{
    std::vector<FlagId> out;
    out.reserve(size());
    std::merge(generic.begin(), generic.end(), special.begin(), special.end(), std::back_inserter(out));
    return out;
}

SplitSet build(const IndSetDescriptor& desc, const FlagUniverse& universe, const Executor& exec)
{
    validate(desc);
    const Membership m(desc, universe);
    std::vector<Part> parts(universe.size(), Part::None);
    exec.parallel_for(universe.size(), 4096, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            parts[i] = m.part(static_cast<FlagId>(i));
    });
    SplitSet out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] == Part::Generic)
            out.generic.push_back(static_cast<FlagId>(i));
        else if (parts[i] == Part::Special)
            out.special.push_back(static_cast<FlagId>(i));
    }
    return out;
}

std::optional<Edge> find_adjacent_pair(std::span<const FlagId> set, const FlagUniverse& universe, const Executor& exec)
{
    const std::size_t n = set.size();
    if (n < 2)
        return std::nullopt;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::atomic<std::size_t> best_i {none};
    std::vector<std::size_t> first_j(n, none);

    if (universe.kneser_d() != 0) {
        // contiguous copies of the two mask levels for the members
        const std::size_t W = universe.words();
        std::vector<std::uint64_t> lo(n * W), hi(n * W);
        for (std::size_t i = 0; i < n; ++i) {
            auto a = universe.mask(set[i], 0);
            auto b = universe.mask(set[i], 1);
            std::copy(a.begin(), a.end(), lo.begin() + static_cast<std::ptrdiff_t>(i * W));
            std::copy(b.begin(), b.end(), hi.begin() + static_cast<std::ptrdiff_t>(i * W));
        }
        auto disjoint = [W](const std::uint64_t* a, const std::uint64_t* b) {
            for (std::size_t w = 0; w < W; ++w)
                if (a[w] & b[w])
                    return false;
            return true;
        };
        exec.parallel_for(n, 32, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                if (i > best_i.load(std::memory_order_relaxed))
                    return;
                const std::uint64_t* lo_i = lo.data() + i * W;
                const std::uint64_t* hi_i = hi.data() + i * W;
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (disjoint(lo_i, hi.data() + j * W) && disjoint(lo.data() + j * W, hi_i)) {
                        first_j[i] = j;
                        std::size_t cur = best_i.load();
                        while (i < cur && !best_i.compare_exchange_weak(cur, i)) { }
                        return;
                    }
                }
            }
        });
    } else {
        exec.parallel_for(n, 32, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                if (i > best_i.load(std::memory_order_relaxed))
                    return;
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (universe.adjacent(set[i], set[j])) {
                        first_j[i] = j;
                        std::size_t cur = best_i.load();
                        while (i < cur && !best_i.compare_exchange_weak(cur, i)) { }
                        return;
                    }
                }
            }
        });
    }
    const std::size_t i = best_i.load();
    if (i == none)
        return std::nullopt;
    return Edge {set[i], set[first_j[i]]};
}

std::optional<FlagId> find_extension(std::span<const FlagId> set, const FlagUniverse& universe, const Executor& exec)
{
    std::vector<bool> member(universe.size(), false);
    for (FlagId id : set)
        member[id] = true;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::atomic<std::size_t> best {none};
    exec.parallel_for(universe.size(), 256, [&](std::size_t b, std::size_t e) {
        for (std::size_t g = b; g < e; ++g) {
            if (g > best.load(std::memory_order_relaxed))
                return;
            if (member[g])
                continue;
            bool blocked = false;
            for (FlagId s : set) {
                if (universe.adjacent(static_cast<FlagId>(g), s)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                std::size_t cur = best.load();
                while (g < cur && !best.compare_exchange_weak(cur, g)) { }
                return;
            }
        }
    });
    if (best.load() == none)
        return std::nullopt;
    return static_cast<FlagId>(best.load());
}

namespace {

std::uint64_t pencil_size(const FlagUniverse& universe)
{
    const int d = universe.kneser_d();
    return static_cast<std::uint64_t>(qcalc::gauss(2 * d, d + 1, universe.field().q()) * qcalc::theta(d, universe.field().q()));
}

template <class Fn>
void for_each_bit(std::span<const std::uint64_t> m, Fn&& fn)
{
    for (std::size_t w = 0; w < m.size(); ++w) {
        std::uint64_t bits = m[w];
        while (bits) {
            fn(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
            bits &= bits - 1;
        }
    }
}

void require_kneser(const FlagUniverse& universe)
{
    if (universe.kneser_d() == 0)
        throw Error(Errc::InvalidType, "independent-set families need the {d, d+1} flag universe");
}

} // namespace

std::vector<std::uint32_t> contained_point_pencils(std::span<const FlagId> set, const FlagUniverse& universe)
{
    require_kneser(universe);
    std::vector<std::uint64_t> count(universe.points().size(), 0);
    for (FlagId id : set)
        for_each_bit(universe.mask(id, 0), [&](std::uint32_t p) { ++count[p]; });
    const std::uint64_t full = pencil_size(universe);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 0; p < count.size(); ++p)
        if (count[p] == full)
            out.push_back(p);
    return out;
}

std::vector<std::uint32_t> contained_dual_pencils(std::span<const FlagId> set, const FlagUniverse& universe)
{
    require_kneser(universe);
    const auto& pts = universe.points();
    std::vector<std::uint64_t> count(pts.size(), 0);
    for (FlagId id : set)
        for (auto p : pts.points_of(pg::dual(universe.flag(id)[1])))
            ++count[p];
    const std::uint64_t full = pencil_size(universe);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 0; p < count.size(); ++p)
        if (count[p] == full)
            out.push_back(p);
    return out;
}

namespace {

Subspace meet_all(const std::vector<Subspace>& v)
{
    Subspace acc = v.front();
    for (std::size_t i = 1; i < v.size(); ++i)
        acc = pg::meet(acc, v[i]);
    return acc;
}

Subspace join_all(const std::vector<Subspace>& v)
{
    Subspace acc = v.front();
    for (std::size_t i = 1; i < v.size(); ++i)
        acc = pg::join(acc, v[i]);
    return acc;
}

// Groups the special flags by the member that selects them (tau for
// point-based sets, pi for hyperplane-based ones). Returns nullopt if some
// selecting member does not bring all q^d of its flags along.
std::optional<std::vector<Subspace>> selectors(
    std::span<const FlagId> special, const FlagUniverse& universe, std::size_t level, std::int64_t per_member)
{
    std::map<Subspace, std::int64_t> groups;
    for (FlagId id : special)
        ++groups[universe.flag(id)[level]];
    std::vector<Subspace> out;
    for (const auto& [s, c] : groups) {
        if (c != per_member)
            return std::nullopt;
        out.push_back(s);
    }
    return out;
}

std::optional<IndSetDescriptor> classify_point_based(
    std::span<const FlagId> set, const FlagUniverse& universe, std::uint32_t pid)
{
    const int d = universe.kneser_d();
    const std::int64_t q = universe.field().q();
    const Subspace p = point_subspace(universe.points(), pid);
    std::vector<FlagId> special;
    for (FlagId id : set)
        if (!kneser::mask_test(universe.mask(id, 0), pid))
            special.push_back(id);
    if (special.empty())
        return IndSetDescriptor {d, GenericOnly {p}};
    auto fam = selectors(special, universe, 1, upow(q, d));
    if (!fam)
        return std::nullopt;
    for (const auto& tau : *fam)
        if (!pg::contains(tau, p))
            return std::nullopt;
    const auto full = static_cast<std::size_t>(qcalc::gauss(2 * d - 1, d - 1, q));
    if (fam->size() == full) {
        const Subspace m = meet_all(*fam);
        if (m.rank() == 2)
            return IndSetDescriptor {d, PointLine {p, m}};
        const Subspace j = join_all(*fam);
        if (j.rank() == 2 * d)
            return IndSetDescriptor {d, PointHyperplane {p, j}};
    }
    for (std::size_t i = 0; i < fam->size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (pg::meet((*fam)[i], (*fam)[k]).rank() < 2)
                return std::nullopt;
    return IndSetDescriptor {d, PointFamily {p, std::move(*fam)}};
}

std::optional<IndSetDescriptor> classify_hyperplane_based(
    std::span<const FlagId> set, const FlagUniverse& universe, std::uint32_t dual_pid)
{
    const int d = universe.kneser_d();
    const std::int64_t q = universe.field().q();
    const Subspace h = pg::dual(point_subspace(universe.points(), dual_pid));
    const auto hmask = universe.points().mask(h);
    std::vector<FlagId> special;
    for (FlagId id : set)
        if (!kneser::mask_subset(universe.mask(id, 1), hmask))
            special.push_back(id);
    if (special.empty())
        return IndSetDescriptor {d, DualGenericOnly {h}};
    auto fam = selectors(special, universe, 0, upow(q, d));
    if (!fam)
        return std::nullopt;
    for (const auto& pi : *fam)
        if (!pg::contains(h, pi))
            return std::nullopt;
    const auto full = static_cast<std::size_t>(qcalc::gauss(2 * d - 1, d, q));
    if (fam->size() == full) {
        const Subspace j = join_all(*fam);
        if (j.rank() == 2 * d - 1)
            return IndSetDescriptor {d, HyperplaneColine {h, j}};
        const Subspace m = meet_all(*fam);
        if (m.rank() == 1)
            return IndSetDescriptor {d, HyperplanePoint {h, m}};
    }
    for (std::size_t i = 0; i < fam->size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (pg::meet((*fam)[i], (*fam)[k]).is_zero())
                return std::nullopt;
    return IndSetDescriptor {d, HyperplaneFamily {h, std::move(*fam)}};
}

} // namespace

std::optional<IndSetDescriptor> classify(std::span<const FlagId> set, const FlagUniverse& universe)
{
    require_kneser(universe);
    std::vector<FlagId> sorted(set.begin(), set.end());
    std::sort(sorted.begin(), sorted.end());
    for (auto pid : contained_point_pencils(sorted, universe))
        if (auto desc = classify_point_based(sorted, universe, pid))
            return desc;
    for (auto hid : contained_dual_pencils(sorted, universe))
        if (auto desc = classify_hyperplane_based(sorted, universe, hid))
            return desc;
    return std::nullopt;
}

} // namespace qkneser::indsets
