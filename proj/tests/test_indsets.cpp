#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qkneser/error.hpp"
#include "qkneser/indsets.hpp"
#include "variants.hpp"

#include <algorithm>

using namespace qkneser;
using namespace qkneser::indsets;

namespace {

using VSet = std::set<oracle::Vec>;

VSet vector_set(const Subspace& s, const oracle::Field& of)
{
    std::vector<oracle::Vec> rows;
    for (const auto& r : s.rows())
        rows.emplace_back(r.begin(), r.end());
    return oracle::span(of, rows, s.ambient_rank());
}

bool within(const VSet& small, const VSet& big) { return std::includes(big.begin(), big.end(), small.begin(), small.end()); }

// Membership straight from the definitions, on vector sets.
bool member_oracle(const IndSetDescriptor& desc, const Flag& f, const oracle::Field& of)
{
    const auto pi = vector_set(f[0], of), tau = vector_set(f[1], of);
    auto in = [&](const VSet& s, const Subspace& x) { return within(vector_set(x, of), s); };
    auto contains = [&](const Subspace& x, const VSet& s) { return within(s, vector_set(x, of)); };
    auto listed = [&](const std::vector<Subspace>& fam, const VSet& s) {
        return std::any_of(fam.begin(), fam.end(), [&](const Subspace& x) { return vector_set(x, of) == s; });
    };
    if (desc.point_based() ? in(pi, desc.base()) : contains(desc.base(), tau))
        return true;
    return std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PointLine>)
                return in(tau, s.line);
            else if constexpr (std::is_same_v<T, PointHyperplane>)
                return in(tau, s.point) && contains(s.hyperplane, tau);
            else if constexpr (std::is_same_v<T, PointFamily>)
                return listed(s.family, tau);
            else if constexpr (std::is_same_v<T, HyperplaneColine>)
                return contains(s.coline, pi);
            else if constexpr (std::is_same_v<T, HyperplanePoint>)
                return in(pi, s.point) && contains(s.hyperplane, pi);
            else if constexpr (std::is_same_v<T, HyperplaneFamily>)
                return listed(s.family, pi);
            else
                return false;
        },
        desc.shape);
}

bool independent_oracle(const std::vector<FlagId>& set, const FlagUniverse& u)
{
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (kneser::general_position(u.flag(set[i]), u.flag(set[j])))
                return false;
    return true;
}

bool maximal_oracle(const std::vector<FlagId>& set, const FlagUniverse& u)
{
    for (FlagId x = 0; x < u.size(); ++x) {
        if (std::binary_search(set.begin(), set.end(), x))
            continue;
        bool blocked = false;
        for (FlagId m : set)
            if ((blocked = kneser::general_position(u.flag(x), u.flag(m))))
                break;
        if (!blocked)
            return false;
    }
    return true;
}

Errc code_of(const IndSetDescriptor& desc)
{
    try {
        validate(desc);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::InvalidArgs;
}

} // namespace

TEST_CASE("built sets match the definitions")
{
    const auto& f = gf::make_field(2);
    const auto of = oracle::Field::make(2);
    const auto u = FlagUniverse::kneser(2, f);
    for (const auto& desc : every_variant(2, f)) {
        CAPTURE(desc.variant_name());
        std::vector<FlagId> want;
        for (FlagId x = 0; x < u.size(); ++x)
            if (member_oracle(desc, u.flag(x), of))
                want.push_back(x);
        const auto set = build(desc, u, Executor(2));
        CHECK(set.all() == want);
        CHECK(std::is_sorted(set.generic.begin(), set.generic.end()));
        CHECK(std::is_sorted(set.special.begin(), set.special.end()));
        const Membership m(desc, u);
        for (FlagId x = 0; x < u.size(); ++x)
            CHECK(m.part(x) == part_of(desc, u.flag(x)));
        for (auto x : set.generic)
            CHECK(m.part(x) == Part::Generic);
        for (auto x : set.special)
            CHECK(m.part(x) == Part::Special);
    }
}

TEST_CASE("independence and maximality agree with pairwise checks")
{
    const auto& f = gf::make_field(2);
    const auto u = FlagUniverse::kneser(2, f);
    const auto desc = every_variant(2, f);
    for (const auto& d : desc) {
        CAPTURE(d.variant_name());
        const auto set = build(d, u).all();
        CHECK(independent_oracle(set, u));
        CHECK(is_independent(set, u));
        const auto name = d.variant_name();
        const bool pencil_only = name.find("pencil") != std::string_view::npos || name.find("generic_only") != std::string_view::npos;
        CHECK(is_maximal(set, u) == maximal_oracle(set, u));
        // a bare pencil can still be extended; every variant with a special part cannot
        CHECK(is_maximal(set, u) == !pencil_only);
    }
    const std::vector<FlagId> empty;
    CHECK(is_independent(empty, u));
    CHECK(find_extension(empty, u) == FlagId {0});
}

TEST_CASE("adjacent-pair witness")
{
    const auto u = FlagUniverse::kneser(2, gf::make_field(2));
    const auto set = build(every_variant(2, gf::make_field(2))[0], u).all();
    // a member of the pencil together with a flag in general position to it
    const FlagId a = set.front();
    FlagId b = 0;
    for (; b < u.size() && !kneser::general_position(u.flag(a), u.flag(b)); ++b) {
    }
    REQUIRE(b < u.size());
    std::vector<FlagId> bad {a, b};
    for (std::size_t i = 1; i < 5; ++i)
        bad.push_back(set[i]);
    const auto w = find_adjacent_pair(bad, u, Executor(2));
    REQUIRE(w);
    CHECK(w->first == a);
    CHECK(kneser::general_position(u.flag(w->first), u.flag(w->second)));
    CHECK_FALSE(is_independent(bad, u));
}

TEST_CASE("classification recovers built sets")
{
    for (auto [d, q] : {std::pair {2, 2}, {2, 3}}) {
        const auto& f = gf::make_field(q);
        const auto u = FlagUniverse::kneser(d, f);
        for (const auto& desc : every_variant(d, f)) {
            CAPTURE(desc.variant_name());
            const auto set = build(desc, u).all();
            const auto got = classify(set, u);
            REQUIRE(got);
            CHECK(build(*got, u).all() == set);
            CHECK(got->point_based() == desc.point_based());
            CHECK(got->base() == desc.base());
        }
        // pencils come back as their bare generic part
        const auto pencil = classify(build(every_variant(d, f)[0], u).all(), u);
        REQUIRE(pencil);
        CHECK(pencil->variant_name() == "generic_only");

        // removing one generic flag from a point-line set leaves no recognisable structure
        auto broken = build(every_variant(d, f)[2], u).all();
        broken.erase(broken.begin());
        CHECK_FALSE(classify(broken, u));
    }
}

TEST_CASE("pencils contained in a set")
{
    const auto& f = gf::make_field(2);
    const auto u = FlagUniverse::kneser(2, f);
    const auto v = every_variant(2, f);
    const auto pl = build(v[2], u).all(); // point-line around <e1>
    CHECK(contained_point_pencils(pl, u) == std::vector<std::uint32_t> {u.points().id_of(v[2].base().row(0))});
    CHECK(contained_dual_pencils(pl, u).empty());
    const auto hp = build(v[5], u).all(); // dual pencil of <e1..e4>
    const auto perp = pg::dual(v[5].base());
    CHECK(contained_dual_pencils(hp, u) == std::vector<std::uint32_t> {u.points().id_of(perp.row(0))});
    CHECK(contained_point_pencils(hp, u).empty());
}

TEST_CASE("duality maps sets onto sets")
{
    for (auto [d, q] : {std::pair {2, 2}, {2, 3}}) {
        const auto& f = gf::make_field(q);
        const auto u = FlagUniverse::kneser(d, f);
        for (const auto& desc : every_variant(d, f)) {
            CAPTURE(desc.variant_name());
            const auto dd = dual(desc);
            CHECK(dual(dd) == desc);
            CHECK(dd.point_based() != desc.point_based());
            CHECK_NOTHROW(validate(dd));
            std::vector<FlagId> image;
            for (auto x : build(desc, u).all()) {
                const auto y = u.id_of(dual_flag(u.flag(x)));
                REQUIRE(y);
                image.push_back(*y);
            }
            std::sort(image.begin(), image.end());
            CHECK(image == build(dd, u).all());
        }
    }
}

TEST_CASE("descriptor validation")
{
    const auto& f = gf::make_field(2);
    const auto v = every_variant(2, f);
    for (const auto& desc : v)
        CHECK_NOTHROW(validate(desc));
    const auto p = pg::span_of_units(f, 5, {0});
    const auto p4 = pg::span_of_units(f, 5, {4});
    const auto line = pg::span_of_units(f, 5, {1, 2});
    const auto plane = pg::span_of_units(f, 5, {0, 1, 2});
    const auto h = v[5].base();
    CHECK(code_of({2, PointLine {p, line}}) == Errc::InvalidDescriptor);
    CHECK(code_of({2, PointPencil {line}}) == Errc::InvalidDescriptor);
    CHECK(code_of({2, DualPointPencil {plane}}) == Errc::InvalidDescriptor);
    CHECK(code_of({2, PointHyperplane {p4, h}}) == Errc::InvalidDescriptor);
    CHECK(code_of({2, HyperplanePoint {h, p4}}) == Errc::InvalidDescriptor);
    CHECK(code_of({3, PointPencil {p}}) == Errc::InvalidDescriptor);
    CHECK(code_of({2, PointPencil {pg::span_of_units(gf::make_field(3), 5, {0})}}) == Errc::InvalidArgs);
    // two planes through p meeting only in p
    const auto a = pg::span_of_units(f, 5, {0, 1, 2});
    const auto b = pg::span_of_units(f, 5, {0, 3, 4});
    CHECK(code_of({2, PointFamily {p, {a, b}}}) == Errc::InvalidDescriptor);
    CHECK(code_of({2, PointFamily {p4, {a}}}) == Errc::InvalidDescriptor);
    // disjoint lines inside h
    const auto l1 = pg::span_of_units(f, 5, {0, 1});
    const auto l2 = pg::span_of_units(f, 5, {2, 3});
    CHECK(code_of({2, HyperplaneFamily {h, {l1, l2}}}) == Errc::InvalidDescriptor);
    CHECK(code_of({2, HyperplaneColine {h, line}}) == Errc::InvalidDescriptor);
}

TEST_CASE("expected special sizes")
{
    const auto& f = gf::make_field(3);
    const auto u = FlagUniverse::kneser(2, f);
    for (const auto& desc : every_variant(2, f)) {
        CAPTURE(desc.variant_name());
        CHECK(desc.expected_special_size() == build(desc, u).special.size());
    }
}
