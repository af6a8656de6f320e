#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qkneser/error.hpp"
#include "qkneser/io.hpp"
#include "variants.hpp"

#include <filesystem>

using namespace qkneser;
using io::json;

namespace {

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::InvalidArgs;
}

} // namespace

TEST_CASE("integers")
{
    CHECK(io::to_json(qcalc::QInt(29)) == json(29));
    const auto big = qcalc::QInt(3) * qcalc::ipow(7, 15) * qcalc::ipow(2, 56);
    CHECK(io::to_json(big) == json("1026293579860694598741544402944"));
    CHECK(io::qint_from_json(io::to_json(big)) == big);
    CHECK(io::qint_from_json(json(-4)) == -4);
    CHECK_THROWS_AS(io::qint_from_json(json("12x")), Error);
    CHECK_THROWS_AS(io::qint_from_json(json(1.5)), Error);
}

TEST_CASE("descriptors round-trip")
{
    for (int q : {2, 3, 4}) {
        for (const auto& desc : every_variant(2, gf::make_field(q))) {
            CAPTURE(desc.variant_name());
            const auto j = io::to_json(desc);
            CHECK(j["variant"] == std::string(desc.variant_name()));
            CHECK(j["d"] == 2);
            CHECK(j["q"] == q);
            CHECK(io::descriptor_from_json(j) == desc);
            CHECK(io::descriptor_from_json(json::parse(j.dump())) == desc);
        }
    }
}

TEST_CASE("descriptor parse errors")
{
    const auto good = io::to_json(every_variant(2, gf::make_field(3))[2]); // point_line
    auto expect_invalid = [](const json& j) { CHECK(code_of([&] { io::descriptor_from_json(j); }) == Errc::InvalidDescriptor); };

    auto j = good;
    j["P"] = json::array({json::array({0, 2, 0, 0, 0})}); // a valid point, but not in canonical form
    expect_invalid(j);
    j = good;
    j["P"] = json::array({json::array({1, 0, 0, 0, 3})}); // entry outside GF(3)
    expect_invalid(j);
    j = good;
    j["P"] = json::array({json::array({1, 0, 0, 0})}); // short row
    expect_invalid(j);
    j = good;
    j["L"] = json::array({json::array({1, 0, 0, 0, 0}), json::array({1, 0, 0, 0, 0})}); // dependent rows
    expect_invalid(j);
    j = good;
    j["L"] = json::array({json::array({0, 1, 0, 0, 0}), json::array({0, 0, 1, 0, 0})}); // line misses the point
    expect_invalid(j);
    j = good;
    j["variant"] = "point_plane";
    expect_invalid(j);
    j = good;
    j.erase("L");
    expect_invalid(j);
    j = good;
    j["d"] = 9;
    expect_invalid(j);
    j = good;
    j["q"] = 6;
    expect_invalid(j);
}

TEST_CASE("flags round-trip")
{
    const auto& f = gf::make_field(4);
    const auto u = kneser::FlagUniverse::kneser(2, f);
    for (kneser::FlagId id : {0u, 7u, 5000u})
        CHECK(io::flag_from_json(io::to_json(u.flag(id)), 5, f) == u.flag(id));
}

TEST_CASE("certificates round-trip")
{
    const auto c = cover::build_cover(2, gf::make_field(3));
    const auto back = io::certificate_from_json(json::parse(io::to_json(c).dump()));
    CHECK(back.d == c.d);
    CHECK(back.q == c.q);
    CHECK(back.anchor == c.anchor);
    CHECK(back.classes == c.classes);

    auto j = io::to_json(c);
    j.erase("U");
    CHECK_FALSE(io::certificate_from_json(j).anchor);
    j["classes"][0]["P"] = json::array({json::array({0, 0, 0, 0, 2})});
    CHECK(code_of([&] { io::certificate_from_json(j); }) == Errc::MalformedCertificate);
    CHECK(code_of([] { io::certificate_from_json(json::parse(R"({"d": 2})")); }) == Errc::MalformedCertificate);
    CHECK(code_of([] { io::certificate_from_json(json::array()); }) == Errc::MalformedCertificate);
}

TEST_CASE("reports")
{
    auto c = cover::build_cover(2, gf::make_field(2));
    c.classes.pop_back();
    const auto j = io::to_json(cover::verify_cover(c));
    CHECK(j["valid"] == false);
    CHECK(j["total_flags"] == 1085);
    CHECK(j["missing_count"].get<std::uint64_t>() > 0);
    CHECK(j["missing"].is_array());

    const auto t = io::to_json(qcalc::q_thresholds(3, 5));
    CHECK(t.dump().find("1026293579860694598741544402944") != std::string::npos);
}

TEST_CASE("atomic file writes")
{
    const auto dir = std::filesystem::temp_directory_path() / "qkneser_io_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    io::write_atomic(path, "first\n");
    io::write_atomic(path, "second\n");
    CHECK(io::read_file(path) == "second\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir))
        ++entries;
    CHECK(entries == 1); // no temporary left behind
    CHECK_THROWS_AS(io::read_file(dir / "absent.json"), Error);
    CHECK_THROWS_AS(io::write_atomic(dir / "no" / "such" / "dir.json", "x"), Error);
    std::filesystem::remove_all(dir);
}
