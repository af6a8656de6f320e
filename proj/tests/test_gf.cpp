#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qkneser/error.hpp"
#include "qkneser/gf.hpp"

using namespace qkneser;

TEST_CASE("tables agree with polynomial arithmetic")
{
    for (int q : gf::supported_orders()) {
        CAPTURE(q);
        const auto& f = gf::make_field(q);
        const auto o = oracle::Field::make(q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(static_cast<gf::Scalar>(a), static_cast<gf::Scalar>(b)) == o.add(a, b));
                CHECK(f.mul(static_cast<gf::Scalar>(a), static_cast<gf::Scalar>(b)) == o.mul(a, b));
            }
    }
}

TEST_CASE("GF(4) multiplication by x^2 = x + 1")
{
    const auto& f = gf::make_field(4);
    // element 2 is x, element 3 is x + 1
    CHECK(f.mul(2, 2) == 3);
    CHECK(f.mul(2, 3) == 1);
    CHECK(f.mul(3, 3) == 2);
}

TEST_CASE("GF(5) inverses by search")
{
    const auto& f = gf::make_field(5);
    for (int a = 1; a < 5; ++a) {
        int found = -1;
        for (int b = 1; b < 5; ++b)
            if (a * b % 5 == 1)
                found = b;
        CHECK(f.inv(static_cast<gf::Scalar>(a)) == found);
    }
}

TEST_CASE("field axioms hold exhaustively")
{
    for (int q : gf::supported_orders()) {
        CAPTURE(q);
        const auto& f = gf::make_field(q);
        for (int ai = 0; ai < q; ++ai) {
            const auto a = static_cast<gf::Scalar>(ai);
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.sub(a, a) == 0);
            if (a != 0)
                CHECK(f.mul(a, f.inv(a)) == 1);
            for (int bi = 0; bi < q; ++bi) {
                const auto b = static_cast<gf::Scalar>(bi);
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (int ci = 0; ci < q; ++ci) {
                    const auto c = static_cast<gf::Scalar>(ci);
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        // the multiplicative group is cyclic of order q - 1
        bool has_generator = false;
        for (int g = 1; g < q && !has_generator; ++g) {
            int order = 1;
            while (f.pow(static_cast<gf::Scalar>(g), static_cast<unsigned>(order)) != 1)
                ++order;
            has_generator = order == q - 1;
        }
        CHECK(has_generator);
    }
}

TEST_CASE("pinned reduction polynomials are irreducible")
{
    CHECK(gf::make_field(4).reduction_poly() == std::vector<int> {1, 1, 1});
    CHECK(gf::make_field(8).reduction_poly() == std::vector<int> {1, 1, 0, 1});
    CHECK(gf::make_field(9).reduction_poly() == std::vector<int> {1, 0, 1});
    for (int q : {4, 8, 9}) {
        const auto& f = gf::make_field(q);
        CHECK(gf::is_irreducible(f.reduction_poly(), f.p()));
    }
    CHECK_FALSE(gf::is_irreducible(std::vector<int> {1, 0, 1}, 2)); // (x+1)^2
    CHECK_FALSE(gf::is_irreducible(std::vector<int> {2, 0, 1}, 3)); // (x+1)(x+2)
    CHECK(gf::make_field(4).describe() == "GF(4) = GF(2)[x]/(x^2+x+1)");
}

TEST_CASE("unsupported orders and division by zero")
{
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::InvalidArgs;
    };
    CHECK(code([] { gf::make_field(6); }) == Errc::NotPrimePower);
    CHECK(code([] { gf::make_field(1); }) == Errc::NotPrimePower);
    CHECK(code([] { gf::make_field(12); }) == Errc::NotPrimePower);
    CHECK(code([] { gf::make_field(11); }) == Errc::Unsupported);
    CHECK(code([] { gf::make_field(16); }) == Errc::Unsupported);
    CHECK(code([] { gf::make_field(3).inv(0); }) == Errc::DivisionByZero);
    CHECK(gf::is_supported(9));
    CHECK_FALSE(gf::is_supported(10));
}

TEST_CASE("polynomial table hash is stable within a build")
{
    CHECK(gf::polynomial_table_hash() == gf::polynomial_table_hash());
    CHECK(gf::polynomial_table_hash() != 0);
}
