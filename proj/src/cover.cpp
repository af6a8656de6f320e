#include "qkneser/cover.hpp"

#include "qkneser/error.hpp"

#include <algorithm>
#include <map>

namespace qkneser::cover {

namespace {

Subspace pad(const Subspace& s, int n)
{
    std::vector<pg::Vector> rows;
    for (auto& r : s.rows()) {
        r.resize(static_cast<std::size_t>(n), 0);
        rows.push_back(std::move(r));
    }
    return pg::rref(rows, n, s.field());
}

std::string class_key(const IndSetDescriptor& desc)
{
    std::string key(desc.variant_name());
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (requires { s.point; })
                key += "|P" + pg::to_string(s.point);
            if constexpr (requires { s.hyperplane; })
                key += "|H" + pg::to_string(s.hyperplane);
            if constexpr (requires { s.line; })
                key += "|L" + pg::to_string(s.line);
            if constexpr (requires { s.coline; })
                key += "|S" + pg::to_string(s.coline);
            if constexpr (requires { s.family; })
                for (const auto& f : s.family)
                    key += "|F" + pg::to_string(f);
            (void)sizeof(T);
        },
        desc.shape);
    return key;
}

} // namespace

bool VerifyReport::sizes_match() const
{
    return std::all_of(class_sizes.begin(), class_sizes.end(), [](const ClassSize& c) { return c.matches(); });
}

CoverCertificate build_cover(int d, const Field& field)
{
    if (d < 2)
        throw Error(Errc::InvalidArgs, "build_cover needs d >= 2");
    const int n = 2 * d + 1;
    const int m = d + 2;

    std::vector<pg::Vector> urows;
    for (int i = 0; i < m; ++i)
        urows.push_back(pg::unit_vector(n, i));
    const Subspace u = pg::rref(urows, n, field);
    const Subspace base_line = pg::span_of_units(field, n, {0, 1});

    std::vector<Subspace> line_points; // P0..Pq
    pg::for_each_subspace(2, 1, field, [&](const Subspace& p) { line_points.push_back(pad(p, n)); });
    const Subspace& p0 = line_points.front();
    const std::vector<Subspace> w(line_points.begin() + 1, line_points.end());

    std::vector<Subspace> lines_of_u;
    pg::for_each_subspace(m, 2, field, [&](const Subspace& l) { lines_of_u.push_back(pad(l, n)); });

    // h_plane: the q lines of the plane through P0 other than the base line,
    // in canonical order, paired with W in order
    std::map<Subspace, std::vector<Subspace>> pencil_at_p0;
    auto lines_through_p0 = [&](const Subspace& plane) -> const std::vector<Subspace>& {
        auto it = pencil_at_p0.find(plane);
        if (it != pencil_at_p0.end())
            return it->second;
        std::vector<Subspace> ls;
        for (const auto& l : lines_of_u)
            if (l != base_line && pg::contains(l, p0) && pg::contains(plane, l))
                ls.push_back(l);
        std::sort(ls.begin(), ls.end());
        if (ls.size() != w.size())
            throw Error(Errc::InvalidArgs, "internal: plane pencil has the wrong size");
        return pencil_at_p0.emplace(plane, std::move(ls)).first->second;
    };

    CoverCertificate cert;
    cert.d = d;
    cert.q = field.q();
    cert.anchor = u;
    cert.provenance = "point-line covering: U = <e1..e" + std::to_string(m) + ">, base line <e1,e2>, W = its points except "
        "the first, plane pencils paired with W in canonical order";
    for (const auto& l : lines_of_u) {
        if (l == base_line) {
            cert.classes.push_back({d, indsets::PointLine {p0, l}});
            continue;
        }
        const Subspace x = pg::meet(l, base_line);
        if (x.rank() != 1 || x == p0)
            continue; // l misses W
        const auto wi = static_cast<std::size_t>(std::find(w.begin(), w.end(), x) - w.begin());
        const Subspace plane = pg::join(base_line, l);
        const Subspace nu = pg::meet(l, lines_through_p0(plane)[wi]);
        cert.classes.push_back({d, indsets::PointLine {nu, l}});
    }
    return cert;
}

VerifyReport verify_cover(const CoverCertificate& cert, const Executor& exec, VerifyOptions opts)
{
    if (cert.d < 1)
        throw Error(Errc::MalformedCertificate, "d must be at least 1");
    const Field& field = gf::make_field(cert.q);
    for (std::size_t i = 0; i < cert.classes.size(); ++i) {
        const auto& c = cert.classes[i];
        if (c.d != cert.d || c.q() != cert.q)
            throw Error(Errc::MalformedCertificate, "class " + std::to_string(i) + " has different (d, q)");
        try {
            indsets::validate(c);
        } catch (const Error& e) {
            throw Error(Errc::MalformedCertificate, "class " + std::to_string(i) + ": " + e.what());
        }
    }

    std::optional<FlagUniverse> owned;
    const FlagUniverse* universe = opts.universe;
    if (!universe || universe->kneser_d() != cert.d || universe->field().q() != cert.q) {
        owned.emplace(FlagUniverse::kneser(cert.d, field));
        universe = &*owned;
    }
    const std::size_t total = universe->size();

    std::vector<indsets::Membership> members;
    members.reserve(cert.classes.size());
    for (const auto& c : cert.classes)
        members.emplace_back(c, *universe);

    // per flag: which classes hold it, and in which part
    const std::size_t k = cert.classes.size();
    std::vector<indsets::Part> parts(total * k, indsets::Part::None);
    exec.parallel_for(total, 2048, [&](std::size_t b, std::size_t e) {
        for (std::size_t f = b; f < e; ++f)
            for (std::size_t c = 0; c < k; ++c)
                parts[f * k + c] = members[c].part(static_cast<kneser::FlagId>(f));
    });

    VerifyReport rep;
    rep.total_flags = total;
    std::uint64_t covered = 0;
    std::vector<std::vector<kneser::FlagId>> class_members(k);
    std::vector<ClassSize> sizes(k);
    for (std::size_t f = 0; f < total; ++f) {
        bool hit = false;
        for (std::size_t c = 0; c < k; ++c) {
            const auto p = parts[f * k + c];
            if (p == indsets::Part::None)
                continue;
            hit = true;
            class_members[c].push_back(static_cast<kneser::FlagId>(f));
            if (p == indsets::Part::Generic)
                ++sizes[c].generic;
            else
                ++sizes[c].special;
        }
        if (hit) {
            ++covered;
        } else {
            ++rep.missing_count;
            if (rep.missing.size() < opts.missing_limit)
                rep.missing.push_back(universe->flag(static_cast<kneser::FlagId>(f)));
        }
    }
    rep.covered = covered;

    const std::int64_t q = cert.q;
    const QInt generic_expected = qcalc::gauss(2 * cert.d, cert.d + 1, q) * qcalc::theta(cert.d, q);
    for (std::size_t c = 0; c < k; ++c) {
        sizes[c].index = c;
        sizes[c].variant = std::string(cert.classes[c].variant_name());
        sizes[c].expected_generic = generic_expected;
        sizes[c].expected_special = cert.classes[c].expected_special_size();
        if (auto edge = indsets::find_adjacent_pair(class_members[c], *universe, exec))
            rep.bad_classes.push_back({c, universe->flag(edge->first), universe->flag(edge->second)});
    }
    rep.class_sizes = std::move(sizes);
    return rep;
}

CoverCertificate dualize_cover(const CoverCertificate& cert)
{
    CoverCertificate out;
    out.d = cert.d;
    out.q = cert.q;
    try {
        if (cert.anchor)
            out.anchor = pg::dual(*cert.anchor);
        for (const auto& c : cert.classes) {
            indsets::validate(c);
            out.classes.push_back(indsets::dual(c));
        }
    } catch (const Error& e) {
        throw Error(Errc::MalformedCertificate, e.what());
    }
    const std::string tag = " [dualized]";
    if (cert.provenance.size() >= tag.size() && cert.provenance.ends_with(tag))
        out.provenance = cert.provenance.substr(0, cert.provenance.size() - tag.size());
    else
        out.provenance = cert.provenance + tag;
    return out;
}

bool same_up_to_order(const CoverCertificate& a, const CoverCertificate& b)
{
    if (a.d != b.d || a.q != b.q || a.classes.size() != b.classes.size())
        return false;
    auto keys = [](const CoverCertificate& c) {
        std::vector<std::string> k;
        for (const auto& x : c.classes)
            k.push_back(class_key(x));
        std::sort(k.begin(), k.end());
        return k;
    };
    return keys(a) == keys(b);
}

Bracket chromatic_bracket(int d, std::int64_t q)
{
    if (d < 2)
        throw Error(Errc::InvalidArgs, "chromatic_bracket needs d >= 2");
    Bracket b;
    b.upper = qcalc::chromatic_value(d, q);
    const auto sc = qcalc::size_constants(d, q, 1);
    b.lower = qcalc::ceil_div(qcalc::Rational(qcalc::flag_count(d, q), sc.e0));
    return b;
}

} // namespace qkneser::cover
