#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qkneser/error.hpp"
#include "qkneser/kneser.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace qkneser;
using kneser::Flag;
using kneser::FlagUniverse;
using pg::Subspace;

namespace {

std::set<oracle::Vec> vector_set(const Subspace& s, const oracle::Field& of)
{
    std::vector<oracle::Vec> rows;
    for (const auto& r : s.rows())
        rows.emplace_back(r.begin(), r.end());
    return oracle::span(of, rows, s.ambient_rank());
}

// every cross pair meets in zero or spans everything, on vector sets
bool general_position_oracle(const Flag& a, const Flag& b, const oracle::Field& of)
{
    const int n = a.ambient_rank();
    const auto full = oracle::upow(static_cast<std::uint64_t>(of.q), static_cast<unsigned>(n));
    for (const auto& x : a.chain())
        for (const auto& y : b.chain()) {
            const auto vx = vector_set(x, of), vy = vector_set(y, of);
            std::size_t common = 0;
            for (const auto& v : vx)
                common += vy.count(v);
            std::vector<oracle::Vec> rows;
            for (const auto& r : x.rows())
                rows.emplace_back(r.begin(), r.end());
            for (const auto& r : y.rows())
                rows.emplace_back(r.begin(), r.end());
            if (common != 1 && oracle::span(of, rows, n).size() != full)
                return false;
        }
    return true;
}

std::vector<gf::Scalar> random_invertible(std::mt19937_64& rng, const pg::Field& f, int n)
{
    std::vector<gf::Scalar> m;
    do {
        m.assign(static_cast<std::size_t>(n * n), 0);
        for (auto& x : m)
            x = static_cast<gf::Scalar>(rng() % static_cast<unsigned>(f.q()));
    } while (pg::matrix_rank(m, n, f) < n);
    return m;
}

Flag transform(const Flag& f, std::span<const gf::Scalar> m)
{
    std::vector<Subspace> chain;
    for (const auto& s : f.chain())
        chain.push_back(pg::transform(s, m));
    return Flag(std::move(chain));
}

} // namespace

TEST_CASE("flag enumeration against nested subspace pairs")
{
    for (auto [n, ranks, q] : {std::tuple {5, std::vector {2, 3}, 2}, {4, std::vector {1, 2, 3}, 2}, {4, std::vector {1, 3}, 3},
             {5, std::vector {1, 4}, 2}}) {
        CAPTURE(n);
        CAPTURE(q);
        const auto& f = gf::make_field(q);
        const auto of = oracle::Field::make(q);
        // chains of vector sets, each level included in the next
        std::vector<std::vector<std::set<oracle::Vec>>> chains {{}};
        for (int r : ranks) {
            const auto level = oracle::subspaces(of, n, r);
            std::vector<std::vector<std::set<oracle::Vec>>> next;
            for (const auto& c : chains)
                for (const auto& s : level)
                    if (c.empty() || std::includes(s.begin(), s.end(), c.back().begin(), c.back().end())) {
                        next.push_back(c);
                        next.back().push_back(s);
                    }
            chains = std::move(next);
        }
        const auto flags = kneser::enumerate_flags(n, ranks, f);
        CHECK(flags.size() == chains.size());
        std::set<std::vector<std::set<oracle::Vec>>> seen;
        for (const auto& fl : flags) {
            CHECK(fl.type() == ranks);
            std::vector<std::set<oracle::Vec>> c;
            for (const auto& s : fl.chain())
                c.push_back(vector_set(s, of));
            seen.insert(std::move(c));
        }
        CHECK(seen.size() == chains.size());
        CHECK(seen == std::set<std::vector<std::set<oracle::Vec>>>(chains.begin(), chains.end()));
    }
}

TEST_CASE("type and flag validation")
{
    const auto& f = gf::make_field(2);
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::InvalidArgs;
    };
    CHECK(code([] { kneser::validate_type(2, std::vector {1}); }) == Errc::InvalidType);
    CHECK(code([] { kneser::validate_type(5, std::vector<int> {}); }) == Errc::InvalidType);
    CHECK(code([] { kneser::validate_type(5, std::vector {2, 2}); }) == Errc::InvalidType);
    CHECK(code([] { kneser::validate_type(5, std::vector {0, 2}); }) == Errc::InvalidType);
    CHECK(code([] { kneser::validate_type(5, std::vector {3, 5}); }) == Errc::InvalidType);
    CHECK(code([] { kneser::validate_type(5, std::vector {3, 2}); }) == Errc::InvalidType);
    kneser::validate_type(3, std::vector {1});

    const auto p = pg::span_of_units(f, 5, {0});
    const auto l = pg::span_of_units(f, 5, {1, 2});
    CHECK(code([&] { Flag({l, p}); }) == Errc::InvalidType);
    CHECK(code([&] { Flag({p, l}); }) == Errc::InvalidType); // not nested
    CHECK(code([] { Flag({}); }) == Errc::InvalidType);
    CHECK_NOTHROW(Flag({p, pg::join(p, l)}));
    CHECK_THROWS(kneser::FlagUniverse(2, {1}, f));
}

TEST_CASE("adjacency: reference test against vector sets")
{
    const auto& f = gf::make_field(2);
    const auto of = oracle::Field::make(2);
    const auto u = FlagUniverse::kneser(2, f);
    std::mt19937_64 rng(1);
    int edges = 0;
    for (int t = 0; t < 3000; ++t) {
        const auto& a = u.flag(static_cast<kneser::FlagId>(rng() % u.size()));
        const auto& b = u.flag(static_cast<kneser::FlagId>(rng() % u.size()));
        const bool want = general_position_oracle(a, b, of);
        edges += want;
        CHECK(kneser::general_position(a, b) == want);
    }
    CHECK(edges > 0);
}

TEST_CASE("adjacency: mask paths agree with the reference on every pair")
{
    const auto u = FlagUniverse::kneser(2, gf::make_field(2));
    std::size_t disagree = 0, fast_disagree = 0;
    for (kneser::FlagId a = 0; a < u.size(); ++a)
        for (kneser::FlagId b = 0; b < u.size(); ++b) {
            const bool ref = kneser::general_position(u.flag(a), u.flag(b));
            disagree += u.adjacent(a, b) != ref;
            fast_disagree += kneser::general_position_fast(u.flag(a), u.flag(b)) != ref;
        }
    CHECK(disagree == 0);
    CHECK(fast_disagree == 0);

    // the generic mask path, on a type that is not {d, d+1}
    for (auto [n, ranks, q] : {std::tuple {4, std::vector {1, 2, 3}, 2}, {4, std::vector {1, 3}, 3}, {5, std::vector {2}, 2}}) {
        const FlagUniverse g(n, ranks, gf::make_field(q));
        CHECK(g.kneser_d() == 0);
        std::size_t bad = 0;
        for (kneser::FlagId a = 0; a < g.size(); ++a)
            for (kneser::FlagId b = 0; b < g.size(); ++b)
                bad += g.adjacent(a, b) != kneser::general_position(g.flag(a), g.flag(b));
        CHECK(bad == 0);
    }
    CHECK_THROWS_AS(kneser::general_position_fast(FlagUniverse(4, {1, 3}, gf::make_field(2)).flag(0),
                        FlagUniverse(4, {1, 3}, gf::make_field(2)).flag(1)),
        Error);
}

TEST_CASE("adjacency is invariant under invertible linear maps")
{
    std::mt19937_64 rng(17);
    for (auto [d, q] : {std::pair {2, 3}, {3, 2}}) {
        const auto& f = gf::make_field(q);
        const auto u = FlagUniverse::kneser(d, f);
        const auto m = random_invertible(rng, f, 2 * d + 1);
        std::size_t bad = 0, edges = 0;
        for (int t = 0; t < 20000; ++t) {
            const auto a = static_cast<kneser::FlagId>(rng() % u.size());
            const auto b = static_cast<kneser::FlagId>(rng() % u.size());
            const auto ta = u.id_of(transform(u.flag(a), m));
            const auto tb = u.id_of(transform(u.flag(b), m));
            REQUIRE(ta);
            REQUIRE(tb);
            bad += u.adjacent(a, b) != u.adjacent(*ta, *tb);
            edges += u.adjacent(a, b);
        }
        CHECK(bad == 0);
        CHECK(edges > 0);
    }
}

TEST_CASE("neighbours and ids")
{
    const auto u = FlagUniverse::kneser(2, gf::make_field(3));
    for (kneser::FlagId id : {0u, 100u, 15729u}) {
        CHECK(u.id_of(u.flag(id)) == id);
        const auto nb = u.neighbors(id);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        for (auto x : nb)
            CHECK(kneser::general_position(u.flag(id), u.flag(x)));
        CHECK(nb == u.neighbors(u.flag(id)));
    }
    // every flag has the same degree: the general linear group is transitive on flags
    CHECK(u.neighbors(0).size() == u.neighbors(15729).size());
}

TEST_CASE("DIMACS export")
{
    const auto& f = gf::make_field(2);
    {
        const FlagUniverse fano(3, {1}, f);
        std::ostringstream s;
        const auto sum = kneser::export_dimacs(fano, s);
        CHECK(sum.vertices == 7);
        CHECK(sum.edges == 21);
        CHECK(s.str().rfind("p edge 7 21\n", 0) == 0);
    }
    {
        const auto u = FlagUniverse::kneser(2, f);
        std::size_t m = 0;
        for (kneser::FlagId a = 0; a < u.size(); ++a)
            for (kneser::FlagId b = a + 1; b < u.size(); ++b)
                m += kneser::general_position(u.flag(a), u.flag(b));
        std::ostringstream s;
        const auto sum = kneser::export_dimacs(u, s, kneser::default_dimacs_cap, Executor(3));
        CHECK(sum.edges == m);
        std::istringstream in(s.str());
        std::string tag, kind;
        std::size_t nv = 0, ne = 0;
        in >> tag >> kind >> nv >> ne;
        CHECK(tag == "p");
        CHECK(kind == "edge");
        CHECK(nv == 1085);
        CHECK(ne == m);
        std::size_t lines = 0, a = 0, b = 0, pa = 0, pb = 0;
        bool ordered = true;
        while (in >> tag >> a >> b) {
            ordered = ordered && tag == "e" && a < b && a >= 1 && b <= 1085 && (a > pa || (a == pa && b > pb));
            pa = a;
            pb = b;
            ++lines;
        }
        CHECK(ordered);
        CHECK(lines == m);
    }
    std::ostringstream sink;
    CHECK_THROWS_AS(kneser::export_dimacs(FlagUniverse::kneser(2, gf::make_field(3)), sink, 1000), Error);
}

TEST_CASE("tangent subspace counts")
{
    for (auto [d, q] : {std::pair {2, 2}, {2, 3}}) {
        const auto tc = kneser::count_tangent_subspaces(d, gf::make_field(q));
        CHECK(tc.ok());
        const auto qq = static_cast<std::uint64_t>(q);
        CHECK(tc.expect_on_point == oracle::upow(qq, static_cast<unsigned>(d * d - 1)));
        CHECK(tc.cases_point == oracle::subspace_count(d + 2, 1, qq));
    }
    // a different rank-(d+2) subspace gives the same counts
    const auto& f = gf::make_field(2);
    std::vector<pg::Vector> rows {{1, 1, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, 1, 0, 0, 1}, {1, 0, 0, 1, 1}};
    const auto u = pg::rref(rows, 5, f);
    REQUIRE(u.rank() == 4);
    CHECK(kneser::count_tangent_subspaces(2, f, u).ok());
}
