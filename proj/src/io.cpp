#include "qkneser/io.hpp"

#include "qkneser/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

namespace qkneser::io {

namespace {

using indsets::IndSetDescriptor;
using pg::Subspace;

const json& field_of(const json& j, const char* key, Errc code)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(code, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int int_field(const json& j, const char* key, Errc code)
{
    const json& v = field_of(j, key, code);
    if (!v.is_number_integer())
        throw Error(code, std::string("field \"") + key + "\" must be an integer");
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw Error(code, std::string("field \"") + key + "\" out of range");
    return static_cast<int>(x);
}

json family_json(const std::vector<Subspace>& fam)
{
    json a = json::array();
    for (const auto& s : fam)
        a.push_back(to_json(s));
    return a;
}

std::vector<Subspace> family_from(const json& j, int n, const pg::Field& f)
{
    if (!j.is_array())
        throw Error(Errc::InvalidDescriptor, "\"family\" must be a list of bases");
    std::vector<Subspace> out;
    for (const auto& b : j)
        out.push_back(subspace_from_json(b, n, f, Errc::InvalidDescriptor));
    return out;
}

json flags_json(const std::vector<kneser::Flag>& flags)
{
    json a = json::array();
    for (const auto& f : flags)
        a.push_back(to_json(f));
    return a;
}

std::string_view part_name(qcalc::BoundPart p)
{
    switch (p) {
    case qcalc::BoundPart::A:
        return "a";
    case qcalc::BoundPart::B:
        return "b";
    case qcalc::BoundPart::C:
        return "c";
    }
    return "?";
}

} // namespace

json to_json(const qcalc::QInt& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

qcalc::QInt qint_from_json(const json& j)
{
    if (j.is_number_integer())
        return qcalc::QInt(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
            throw Error(Errc::InvalidArgs, "not an integer: " + s);
        return qcalc::QInt(s);
    }
    throw Error(Errc::InvalidArgs, "expected an integer");
}

json to_json(const Subspace& s)
{
    json rows = json::array();
    for (int i = 0; i < s.rank(); ++i) {
        json r = json::array();
        for (auto x : s.row(i))
            r.push_back(static_cast<int>(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

Subspace subspace_from_json(const json& j, int n, const pg::Field& field, Errc code)
{
    if (!j.is_array())
        throw Error(code, "a basis must be a list of rows");
    std::vector<pg::Vector> rows;
    for (const auto& r : j) {
        if (!r.is_array() || static_cast<int>(r.size()) != n)
            throw Error(code, "every basis row must have " + std::to_string(n) + " entries");
        pg::Vector v;
        for (const auto& x : r) {
            if (!x.is_number_integer())
                throw Error(code, "basis entries must be integers");
            const auto e = x.get<std::int64_t>();
            if (e < 0 || e >= field.q())
                throw Error(code, "basis entry " + std::to_string(e) + " outside 0.." + std::to_string(field.q() - 1));
            v.push_back(static_cast<pg::Scalar>(e));
        }
        rows.push_back(std::move(v));
    }
    Subspace s = pg::rref(rows, n, field);
    if (s.rank() != static_cast<int>(rows.size()))
        throw Error(code, "basis rows are linearly dependent");
    if (s.rows() != rows)
        throw Error(code, "basis is not in canonical reduced row echelon form (expected " + pg::to_string(s) + ")");
    return s;
}

json to_json(const kneser::Flag& f)
{
    json a = json::array();
    for (const auto& s : f.chain())
        a.push_back(to_json(s));
    return a;
}

kneser::Flag flag_from_json(const json& j, int n, const pg::Field& field)
{
    if (!j.is_array())
        throw Error(Errc::InvalidArgs, "a flag must be a list of bases");
    std::vector<Subspace> chain;
    for (const auto& b : j)
        chain.push_back(subspace_from_json(b, n, field, Errc::InvalidArgs));
    return kneser::Flag(std::move(chain));
}

json to_json(const IndSetDescriptor& desc)
{
    json j;
    j["variant"] = std::string(desc.variant_name());
    std::visit(
        [&](const auto& s) {
            if constexpr (requires { s.point; })
                j["P"] = to_json(s.point);
            if constexpr (requires { s.hyperplane; })
                j["H"] = to_json(s.hyperplane);
            if constexpr (requires { s.line; })
                j["L"] = to_json(s.line);
            if constexpr (requires { s.coline; })
                j["S"] = to_json(s.coline);
            if constexpr (requires { s.family; })
                j["family"] = family_json(s.family);
        },
        desc.shape);
    j["d"] = desc.d;
    j["q"] = desc.q();
    return j;
}

IndSetDescriptor descriptor_from_json(const json& j)
{
    constexpr Errc E = Errc::InvalidDescriptor;
    const json& vj = field_of(j, "variant", E);
    if (!vj.is_string())
        throw Error(E, "\"variant\" must be a string");
    const std::string variant = vj.get<std::string>();
    const int d = int_field(j, "d", E);
    const int q = int_field(j, "q", E);
    if (d < 2)
        throw Error(E, "d must be at least 2");
    if (d > 8)
        throw Error(E, "d is too large");
    const pg::Field* fp = nullptr;
    try {
        fp = &gf::make_field(q);
    } catch (const Error& e) {
        throw Error(E, e.what());
    }
    const pg::Field& f = *fp;
    const int n = 2 * d + 1;
    auto sub = [&](const char* key) { return subspace_from_json(field_of(j, key, E), n, f, E); };

    IndSetDescriptor desc {d, indsets::GenericOnly {Subspace(f, n)}};
    if (variant == "point_pencil")
        desc.shape = indsets::PointPencil {sub("P")};
    else if (variant == "generic_only")
        desc.shape = indsets::GenericOnly {sub("P")};
    else if (variant == "point_line")
        desc.shape = indsets::PointLine {sub("P"), sub("L")};
    else if (variant == "point_hyperplane")
        desc.shape = indsets::PointHyperplane {sub("P"), sub("H")};
    else if (variant == "point_family")
        desc.shape = indsets::PointFamily {sub("P"), family_from(field_of(j, "family", E), n, f)};
    else if (variant == "dual_point_pencil")
        desc.shape = indsets::DualPointPencil {sub("H")};
    else if (variant == "dual_generic_only")
        desc.shape = indsets::DualGenericOnly {sub("H")};
    else if (variant == "hyperplane_coline")
        desc.shape = indsets::HyperplaneColine {sub("H"), sub("S")};
    else if (variant == "hyperplane_point")
        desc.shape = indsets::HyperplanePoint {sub("H"), sub("P")};
    else if (variant == "hyperplane_family")
        desc.shape = indsets::HyperplaneFamily {sub("H"), family_from(field_of(j, "family", E), n, f)};
    else
        throw Error(E, "unknown variant \"" + variant + "\"");

    desc = indsets::normalized(std::move(desc));
    indsets::validate(desc);
    return desc;
}

json to_json(const cover::CoverCertificate& cert)
{
    json j;
    j["d"] = cert.d;
    j["q"] = cert.q;
    if (cert.anchor)
        j["U"] = to_json(*cert.anchor);
    json classes = json::array();
    for (const auto& c : cert.classes)
        classes.push_back(to_json(c));
    j["classes"] = std::move(classes);
    j["provenance"] = cert.provenance;
    return j;
}

cover::CoverCertificate certificate_from_json(const json& j)
{
    constexpr Errc E = Errc::MalformedCertificate;
    cover::CoverCertificate cert;
    cert.d = int_field(j, "d", E);
    cert.q = int_field(j, "q", E);
    if (cert.d < 2 || cert.d > 8)
        throw Error(E, "d out of range");
    try {
        const pg::Field& f = gf::make_field(cert.q);
        if (j.contains("U") && !j.at("U").is_null())
            cert.anchor = subspace_from_json(j.at("U"), 2 * cert.d + 1, f, E);
    } catch (const Error& e) {
        throw Error(E, e.what());
    }
    const json& classes = field_of(j, "classes", E);
    if (!classes.is_array())
        throw Error(E, "\"classes\" must be a list");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        try {
            cert.classes.push_back(descriptor_from_json(classes[i]));
        } catch (const Error& e) {
            throw Error(E, "class " + std::to_string(i) + ": " + e.what());
        }
        if (cert.classes.back().d != cert.d || cert.classes.back().q() != cert.q)
            throw Error(E, "class " + std::to_string(i) + " has different (d, q)");
    }
    if (j.contains("provenance")) {
        if (!j.at("provenance").is_string())
            throw Error(E, "\"provenance\" must be a string");
        cert.provenance = j.at("provenance").get<std::string>();
    }
    return cert;
}

json to_json(const cover::VerifyReport& rep)
{
    json j;
    j["valid"] = rep.valid();
    j["total_flags"] = to_json(rep.total_flags);
    j["covered"] = to_json(rep.covered);
    j["missing_count"] = rep.missing_count;
    j["missing"] = flags_json(rep.missing);
    json bad = json::array();
    for (const auto& b : rep.bad_classes)
        bad.push_back({{"class", b.index}, {"witness", json::array({to_json(b.first), to_json(b.second)})}});
    j["bad_classes"] = std::move(bad);
    j["sizes_match"] = rep.sizes_match();
    json sizes = json::array();
    for (const auto& c : rep.class_sizes)
        sizes.push_back({{"class", c.index}, {"variant", c.variant}, {"generic", c.generic}, {"special", c.special},
            {"expected_generic", to_json(c.expected_generic)}, {"expected_special", to_json(c.expected_special)}});
    j["class_sizes"] = std::move(sizes);
    return j;
}

json to_json(const qcalc::SizeConstants& sc)
{
    return {{"d", sc.d}, {"q", sc.q}, {"alpha", sc.alpha}, {"g0", to_json(sc.g0)}, {"e0", to_json(sc.e0)},
        {"e1", to_json(sc.e1)}, {"delta", to_json(sc.delta)}, {"ordered", sc.ordered()}};
}

json to_json(const qcalc::Thresholds& t)
{
    auto one = [](const qcalc::Threshold& x) {
        return json {{"value", to_json(x.value)}, {"strict", x.strict}, {"expression", x.expression}};
    };
    return {{"geometric", one(t.geometric)}, {"alpha", one(t.alpha)}};
}

json to_json(const qcalc::BoundReport& rep)
{
    json v = json::array();
    for (const auto& x : rep.violations)
        v.push_back({{"part", part_name(x.point.part)}, {"point", qcalc::to_string(x.point)}, {"which", x.which},
            {"lhs", to_json(x.lhs)}, {"rhs", to_json(x.rhs)}});
    return {{"ok", rep.ok()}, {"checked_a", rep.checked_a}, {"checked_b", rep.checked_b}, {"checked_c", rep.checked_c},
        {"violations", std::move(v)}};
}

json to_json(const explore::SampleStats& st)
{
    json hist = json::object();
    for (const auto& [size, count] : st.size_histogram)
        hist[std::to_string(size)] = count;
    json large = json::array();
    for (const auto& u : st.unstructured_large)
        large.push_back({{"size", u.size}, {"seed", u.seed}});
    return {{"d", st.d}, {"q", st.q}, {"samples", st.samples}, {"size_histogram", std::move(hist)},
        {"with_point_pencil", st.with_point_pencil}, {"with_dual_point_pencil", st.with_dual_point_pencil},
        {"small_unstructured", st.small_unstructured}, {"unstructured_large", std::move(large)},
        {"classified", st.classified}, {"max_size", st.max_size}, {"max_unstructured_size", st.max_unstructured_size},
        {"scale", to_json(st.scale)}, {"threshold", to_json(st.threshold)},
        {"empirical_rho", qcalc::Rational(st.max_unstructured_size, st.scale).str()}};
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(Errc::InvalidArgs, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error(Errc::InvalidArgs, "write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(Errc::InvalidArgs, "cannot rename into " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::InvalidArgs, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace qkneser::io
