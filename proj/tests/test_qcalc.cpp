#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qkneser/error.hpp"
#include "qkneser/qcalc.hpp"

#include <cmath>

using namespace qkneser;
using qcalc::QInt;
using qcalc::Rational;

namespace {

QInt big(std::uint64_t v) { return QInt(v); }

std::uint64_t theta_oracle(int j, std::uint64_t q) { return (oracle::upow(q, static_cast<unsigned>(j + 1)) - 1) / (q - 1); }

} // namespace

TEST_CASE("gaussian binomials against basis counting")
{
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
        for (int n = 0; n <= 7; ++n)
            for (int k = 0; k <= n; ++k) {
                if (std::log2(static_cast<double>(q)) * n * k > 120)
                    continue; // past the oracle's 128-bit range
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(qcalc::gauss(n, k, static_cast<std::int64_t>(q)) == big(oracle::subspace_count(n, k, q)));
            }
}

TEST_CASE("gaussian binomial identities at large arguments")
{
    for (std::int64_t q : {2, 3, 6, 64})
        for (int n = 1; n <= 14; ++n)
            for (int k = 1; k < n; ++k) {
                // q-Pascal: [n k] = [n-1 k-1] + q^k [n-1 k]
                CHECK(qcalc::gauss(n, k, q) == qcalc::gauss(n - 1, k - 1, q) + qcalc::ipow(q, static_cast<unsigned>(k)) * qcalc::gauss(n - 1, k, q));
                CHECK(qcalc::gauss(n, k, q) == qcalc::gauss(n, n - k, q));
            }
    CHECK_THROWS_AS(qcalc::gauss(2, 3, 2), Error);
    CHECK_THROWS_AS(qcalc::gauss(3, 1, 1), Error);
    CHECK_THROWS_AS(qcalc::gauss(3, -1, 2), Error);
}

TEST_CASE("theta and flag counts")
{
    for (std::uint64_t q : {2, 3, 4, 5})
        for (int j = 0; j < 8; ++j)
            CHECK(qcalc::theta(j, static_cast<std::int64_t>(q)) == big(theta_oracle(j, q)));
    for (auto [d, q] : {std::pair {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
        const auto qq = static_cast<std::uint64_t>(q);
        const auto want = oracle::subspace_count(2 * d + 1, d, qq) * oracle::subspace_count(d + 1, 1, qq);
        CHECK(qcalc::flag_count(d, q) == big(want));
    }
}

TEST_CASE("size constants")
{
    for (auto [d, q, alpha] : {std::tuple {2, 2, 1}, {3, 2, 5}, {2, 3, 2}, {4, 3, 7}}) {
        const auto qq = static_cast<std::uint64_t>(q);
        const auto sc = qcalc::size_constants(d, q, alpha);
        const auto g0 = oracle::subspace_count(2 * d, d + 1, qq) * oracle::subspace_count(d + 1, 1, qq);
        const auto delta = oracle::subspace_count(2 * d - 1, d, qq) * oracle::upow(qq, static_cast<unsigned>(d));
        CHECK(sc.g0 == big(g0));
        CHECK(sc.delta == big(delta));
        CHECK(sc.e0 == big(g0 + delta));
        CHECK(sc.e1 == big(static_cast<std::uint64_t>(alpha) * oracle::upow(qq, static_cast<unsigned>(d * d + d - 2))));
    }
    const auto sc = qcalc::size_constants(3, 2, 5);
    CHECK(sc.ordered()); // 5120 < 9765 < 11005
    CHECK_FALSE(qcalc::size_constants(2, 2, 10).ordered());
}

TEST_CASE("chromatic value and family bound")
{
    for (auto [d, q] : {std::pair {2, 2}, {3, 2}, {2, 3}, {4, 5}}) {
        const auto qq = static_cast<std::uint64_t>(q);
        CHECK(qcalc::chromatic_value(d, q) == big(oracle::subspace_count(d + 2, 1, qq) - qq));
        // greatest integer strictly below (q+1)/q * theta_{d-2} * theta_{d-1}^{d-1}
        const std::uint64_t num = (qq + 1) * theta_oracle(d - 2, qq) * oracle::upow(theta_oracle(d - 1, qq), static_cast<unsigned>(d - 1));
        CHECK(qcalc::family_size_bound(d, q) == big((num - 1) / qq));
    }
    CHECK(qcalc::chromatic_value(3, 2) == 29);
    CHECK(qcalc::ceil_div(Rational(1085, 133)) == 9);
    CHECK(qcalc::ceil_div(Rational(12, 4)) == 3);
}

TEST_CASE("inequality grid")
{
    const auto grid = qcalc::bound_grid(64, 14, 6);
    const auto rep = qcalc::check_gauss_bounds(grid);
    CHECK(rep.ok());
    // part A: q in 4..64 and 0 < k < n <= 14
    CHECK(rep.checked_a == 61u * 91u);
    std::size_t bc = 0;
    for (int c = 1; c <= 6; ++c)
        for (int q = 2; q <= 64; ++q)
            bc += q > c * c + c;
    CHECK(rep.checked_b == bc);
    CHECK(rep.checked_c == bc);

    const qcalc::BoundPoint small_q {qcalc::BoundPart::A, 3, 4, 2, 0};
    CHECK_THROWS_AS(qcalc::check_gauss_bounds(std::vector {small_q}), Error);
    const qcalc::BoundPoint small_b {qcalc::BoundPart::B, 6, 0, 0, 2};
    try {
        qcalc::check_gauss_bounds(std::vector {small_b});
        FAIL("expected a hypothesis violation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::HypothesisViolation);
    }
}

TEST_CASE("growth bound")
{
    const Rational r = qcalc::growth_bound(2, 3, Rational(1, 4), Rational(7));
    CHECK(r == Rational(qcalc::ipow(4, 4), qcalc::ipow(112, 15)));
    // at d = 1 the bound reaches 3q iff 4q >= 3 * 112^3
    const std::int64_t edge = 3 * 112 * 112 * 112 / 4;
    CHECK(qcalc::growth_bound_reaches_3qd(edge, 1));
    CHECK_FALSE(qcalc::growth_bound_reaches_3qd(edge - 1, 1));
}

TEST_CASE("thresholds")
{
    const auto t = qcalc::q_thresholds(3, 5);
    // 3 * 7^15 * 2^56 at d = 3
    CHECK(t.geometric.value == QInt(3) * qcalc::ipow(7, 15) * qcalc::ipow(2, 56));
    CHECK(t.geometric.strict);
    CHECK(t.alpha.value == 107); // 3/2 * 25 + 21/2 * 5 + 17
    CHECK_FALSE(t.alpha.strict);
    CHECK(t.alpha.admits(107));
    CHECK_FALSE(t.geometric.admits(t.geometric.value));
    CHECK(t.geometric.admits(t.geometric.value + 1));
    // alpha = 6: 54 + 63 + 17 = 134; alpha = 7: 73.5 + 73.5 + 17 = 164
    CHECK(qcalc::q_thresholds(3, 6).alpha.value == 134);
    CHECK(qcalc::q_thresholds(3, 7).alpha.value == 164);
    // d = 4: 3 * 112^31 / 32
    CHECK(qcalc::q_thresholds(4, 5).geometric.value == QInt(3) * qcalc::ipow(112, 31) / 32);
    CHECK_THROWS_AS(qcalc::q_thresholds(2, 5), Error);
    CHECK_THROWS_AS(qcalc::q_thresholds(3, 4), Error);
}
