#include "qkneser/cover.hpp"
#include "qkneser/error.hpp"
#include "qkneser/explore.hpp"
#include "qkneser/indsets.hpp"
#include "qkneser/io.hpp"
#include "qkneser/kneser.hpp"
#include "qkneser/qcalc.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace qkneser;
using io::json;
using qcalc::QInt;
using qcalc::Rational;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_invalid = 2;

struct Options {
    unsigned threads = 0;
    bool human = false;
    std::string in;
    std::string out;
};

// A verification verdict, as opposed to a usage or internal error.
struct Invalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        io::write_atomic(o.out, text);
    }
}

void emit_json(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

json read_json(const Options& o)
{
    std::string text;
    if (o.in.empty() || o.in == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        text = io::read_file(o.in);
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::InvalidArgs, std::string("input is not JSON: ") + e.what());
    }
}

Rational parse_rational(const std::string& s)
{
    auto integer = [&](const std::string& t) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw Error(Errc::InvalidArgs, "not a nonnegative rational: " + s);
        return QInt(t);
    };
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const QInt den = integer(s.substr(slash + 1));
        if (den == 0)
            throw Error(Errc::InvalidArgs, "zero denominator in " + s);
        return Rational(integer(s.substr(0, slash)), den);
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        const std::string whole = dot == 0 ? "0" : s.substr(0, dot);
        return Rational(integer(whole)) + Rational(integer(frac.empty() ? "0" : frac), qcalc::ipow(10, static_cast<unsigned>(frac.size())));
    }
    return Rational(integer(s));
}

std::string rational_str(const Rational& r)
{
    return denominator(r) == 1 ? numerator(r).str() : numerator(r).str() + "/" + denominator(r).str();
}

void check_d(int d)
{
    if (d < 2 || d > 6)
        throw Error(Errc::InvalidArgs, "--d must be in 2..6");
}

std::vector<kneser::FlagId> ids_of(const json& flags, const kneser::FlagUniverse& u)
{
    if (!flags.is_array())
        throw Error(Errc::InvalidArgs, "\"flags\" must be a list");
    std::vector<kneser::FlagId> ids;
    for (const auto& fj : flags) {
        const auto f = io::flag_from_json(fj, u.ambient_rank(), u.field());
        const auto id = u.id_of(f);
        if (!id)
            throw Error(Errc::InvalidArgs, "flag has the wrong type for this graph");
        ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

json flags_json(std::span<const kneser::FlagId> ids, const kneser::FlagUniverse& u)
{
    json a = json::array();
    for (auto id : ids)
        a.push_back(io::to_json(u.flag(id)));
    return a;
}

std::string human_report(const cover::VerifyReport& rep)
{
    std::ostringstream s;
    s << "verdict      " << (rep.valid() ? "valid" : "INVALID") << "\n"
      << "covered      " << rep.covered << " / " << rep.total_flags << "\n"
      << "missing      " << rep.missing_count << "\n"
      << "bad classes  " << rep.bad_classes.size() << "\n\n"
      << std::setw(5) << "class" << "  " << std::left << std::setw(18) << "variant" << std::right << std::setw(10) << "generic"
      << std::setw(10) << "special" << "  expected\n";
    for (const auto& c : rep.class_sizes)
        s << std::setw(5) << c.index << "  " << std::left << std::setw(18) << c.variant << std::right << std::setw(10) << c.generic
          << std::setw(10) << c.special << "  " << c.expected_generic << "+" << c.expected_special << (c.matches() ? "" : "  (differs)")
          << "\n";
    return s.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app {"Flag Kneser graphs over small finite fields: exact counts, independent sets, coverings"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--threads", opt.threads, "Worker threads (0 = all hardware threads)");
    app.add_flag("--human", opt.human, "Aligned text instead of JSON where available");
    app.set_version_flag("--version", [] {
        std::ostringstream s;
        s << "qkneser 1.0.0\nfield polynomial table hash " << std::hex << std::setw(16) << std::setfill('0')
          << gf::polynomial_table_hash() << std::dec << "\n";
        for (int q : gf::supported_orders())
            s << "  " << gf::make_field(q).describe() << "\n";
        std::string t = s.str();
        t.pop_back();
        return t;
    });

    int d = 2, q = 2, n = 0, alpha = 5, a = 0, b = 0, j = 0;
    int q_max = 64, n_max = 14, c_max = 6;
    std::vector<int> type;
    std::string d0 = "1/4", n0 = "7", rho = "1", order = "enumeration";
    std::size_t samples = 100, cap = kneser::default_dimacs_cap;
    std::uint64_t seed = 1;
    bool dump = false;

    auto add_dq = [&](CLI::App* s) {
        s->add_option("--d", d, "Flags of type {d, d+1} in rank 2d+1")->required();
        s->add_option("--q", q, "Field order")->required();
    };
    auto add_io = [&](CLI::App* s, bool input, bool output) {
        if (input)
            s->add_option("--in", opt.in, "Input file (default standard input)");
        if (output)
            s->add_option("--out", opt.out, "Output file, written atomically (default standard output)");
    };

    // calc
    auto* calc = app.add_subcommand("calc", "Exact q-analog arithmetic")->require_subcommand(1);
    auto* c_gauss = calc->add_subcommand("gauss", "Gaussian binomial [a b]_q");
    c_gauss->add_option("--a", a)->required();
    c_gauss->add_option("--b", b)->required();
    c_gauss->add_option("--q", q)->required();
    auto* c_theta = calc->add_subcommand("theta", "theta_j = [j+1 1]_q");
    c_theta->add_option("--j", j)->required();
    c_theta->add_option("--q", q)->required();
    auto* c_const = calc->add_subcommand("constants", "Size constants g0, e0, e1, delta");
    add_dq(c_const);
    c_const->add_option("--alpha", alpha);
    auto* c_thr = calc->add_subcommand("thresholds", "Lower bounds on q for the chromatic formula");
    c_thr->add_option("--d", d)->required();
    c_thr->add_option("--alpha", alpha)->required();
    auto* c_bounds = calc->add_subcommand("check-bounds", "Check the Gaussian-binomial inequalities on a grid");
    c_bounds->add_option("--q-max", q_max);
    c_bounds->add_option("--n-max", n_max);
    c_bounds->add_option("--c-max", c_max);
    auto* c_chrom = calc->add_subcommand("chromatic", "theta(d+1, q) - q");
    add_dq(c_chrom);
    auto* c_flags = calc->add_subcommand("flag-count", "Number of flags of type {d, d+1}");
    add_dq(c_flags);
    auto* c_bracket = calc->add_subcommand("bracket", "Heuristic chromatic bracket");
    add_dq(c_bracket);
    auto* c_growth = calc->add_subcommand("growth-bound", "(2q)^{d+1} (d0/(4 n0))^{2^{d+1}-1}");
    add_dq(c_growth);
    c_growth->add_option("--d0", d0);
    c_growth->add_option("--n0", n0);

    // enumerate
    auto* en = app.add_subcommand("enumerate", "Count (and optionally list) flags of a type");
    en->add_option("--n", n, "Ambient rank")->required();
    en->add_option("--type", type, "Ranks of the chain members, e.g. 2,3")->required()->delimiter(',');
    en->add_option("--q", q)->required();
    en->add_flag("--dump", dump, "Include every flag in the output");
    add_io(en, false, true);

    // graph
    auto* graph = app.add_subcommand("graph", "The flag Kneser graph")->require_subcommand(1);
    auto* g_export = graph->add_subcommand("export", "DIMACS edge list");
    g_export->add_option("--n", n, "Ambient rank (with --type; default 2d+1)");
    g_export->add_option("--type", type)->delimiter(',');
    g_export->add_option("--d", d);
    g_export->add_option("--q", q)->required();
    g_export->add_option("--cap", cap, "Refuse graphs with more vertices");
    add_io(g_export, false, true);
    auto* g_color = graph->add_subcommand("color", "Greedy colouring");
    add_dq(g_color);
    g_color->add_option("--order", order)->check(CLI::IsMember({"enumeration", "degree-random"}));
    g_color->add_option("--seed", seed);
    g_color->add_option("--cap", cap);
    add_io(g_color, false, true);

    // indset
    auto* ind = app.add_subcommand("indset", "Independent-set descriptors")->require_subcommand(1);
    auto* i_build = ind->add_subcommand("build", "Materialize a descriptor");
    i_build->add_flag("--dump", dump, "Include every flag in the output");
    add_io(i_build, true, true);
    auto* i_check = ind->add_subcommand("check", "Independence, maximality and structure of a set");
    add_io(i_check, true, true);

    // cover
    auto* cov = app.add_subcommand("cover", "Covering certificates")->require_subcommand(1);
    auto* cv_build = cov->add_subcommand("build", "Construct the point-line covering");
    add_dq(cv_build);
    add_io(cv_build, false, true);
    auto* cv_verify = cov->add_subcommand("verify", "Exhaustively verify a certificate");
    add_io(cv_verify, true, true);
    auto* cv_dual = cov->add_subcommand("dualize", "Dual certificate");
    add_io(cv_dual, true, true);

    // explore
    auto* ex = app.add_subcommand("explore", "Sample maximal independent sets");
    add_dq(ex);
    ex->add_option("--samples", samples);
    ex->add_option("--seed", seed);
    ex->add_option("--rho", rho, "Threshold factor, integer, a/b or decimal");
    add_io(ex, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    const Executor exec(opt.threads);
    try {
        if (calc->parsed()) {
            std::ostringstream s;
            if (c_gauss->parsed()) {
                s << qcalc::gauss(a, b, q) << "\n";
            } else if (c_theta->parsed()) {
                s << qcalc::theta(j, q) << "\n";
            } else if (c_const->parsed()) {
                check_d(d);
                const auto sc = qcalc::size_constants(d, q, alpha);
                if (!opt.human) {
                    emit_json(opt, io::to_json(sc));
                    return exit_ok;
                }
                s << "g0     " << sc.g0 << "\ne0     " << sc.e0 << "\ne1     " << sc.e1 << "\ndelta  " << sc.delta
                  << "\nordered e1 < g0 < e0: " << (sc.ordered() ? "yes" : "no") << "\n";
            } else if (c_thr->parsed()) {
                const auto t = qcalc::q_thresholds(d, alpha);
                if (opt.human)
                    s << "q " << (t.geometric.strict ? ">" : ">=") << " " << t.geometric.value << "   (" << t.geometric.expression << ")\n"
                      << "q " << (t.alpha.strict ? ">" : ">=") << " " << t.alpha.value << "   (" << t.alpha.expression << ")\n";
                else
                    s << t.geometric.value << "\n" << t.alpha.value << "\n";
            } else if (c_bounds->parsed()) {
                const auto rep = qcalc::check_gauss_bounds(qcalc::bound_grid(q_max, n_max, c_max));
                emit_json(opt, io::to_json(rep));
                return rep.ok() ? exit_ok : exit_invalid;
            } else if (c_chrom->parsed()) {
                s << qcalc::chromatic_value(d, q) << "\n";
            } else if (c_flags->parsed()) {
                s << qcalc::flag_count(d, q) << "\n";
            } else if (c_bracket->parsed()) {
                const auto br = cover::chromatic_bracket(d, q);
                s << br.lower << "\n" << br.upper << "\n";
            } else if (c_growth->parsed()) {
                const Rational r = qcalc::growth_bound(q, d, parse_rational(d0), parse_rational(n0));
                s << rational_str(r) << "\n";
                if (opt.human)
                    s << "reaches 3 q^d at d0 = 1/4, n0 = 7: " << (qcalc::growth_bound_reaches_3qd(q, d) ? "yes" : "no") << "\n";
            }
            emit(opt, s.str());
            return exit_ok;
        }

        if (en->parsed()) {
            const auto& f = gf::make_field(q);
            kneser::validate_type(n, type);
            std::uint64_t count = 0;
            json flags = json::array();
            kneser::for_each_flag(n, type, f, [&](const kneser::Flag& fl) {
                ++count;
                if (dump)
                    flags.push_back(io::to_json(fl));
            });
            QInt closed = 1;
            for (std::size_t i = 0, prev = 0; i < type.size(); prev = static_cast<std::size_t>(type[i]), ++i)
                closed *= qcalc::gauss(n - static_cast<int>(prev), type[i] - static_cast<int>(prev), q);
            json out {{"n", n}, {"q", q}, {"type", type}, {"count", count}, {"closed_form", io::to_json(closed)}};
            if (dump)
                out["flags"] = std::move(flags);
            emit_json(opt, out);
            return closed == count ? exit_ok : exit_invalid;
        }

        if (g_export->parsed()) {
            const auto& f = gf::make_field(q);
            std::optional<kneser::FlagUniverse> u;
            if (type.empty()) {
                check_d(d);
                u.emplace(kneser::FlagUniverse::kneser(d, f));
            } else {
                u.emplace(n, type, f);
            }
            if (u->size() > cap)
                throw Error(Errc::TooLarge, std::to_string(u->size()) + " vertices exceed --cap " + std::to_string(cap));
            std::ostringstream s;
            kneser::export_dimacs(*u, s, cap, exec);
            emit(opt, s.str());
            return exit_ok;
        }

        if (g_color->parsed()) {
            check_d(d);
            const auto u = kneser::FlagUniverse::kneser(d, gf::make_field(q));
            const auto ord = order == "enumeration" ? explore::ColorOrder::Enumeration : explore::ColorOrder::DegreeRandom;
            const auto c = explore::greedy_color(u, ord, seed, cap, exec);
            const bool proper = explore::is_proper(c, u, exec);
            emit_json(opt,
                {{"d", d}, {"q", q}, {"order", order}, {"seed", seed}, {"vertices", u.size()}, {"colors", c.colors},
                    {"proper", proper}});
            return proper ? exit_ok : exit_invalid;
        }

        if (i_build->parsed()) {
            const auto desc = io::descriptor_from_json(read_json(opt));
            const auto u = kneser::FlagUniverse::kneser(desc.d, desc.base().field());
            const auto set = indsets::build(desc, u, exec);
            const QInt expected_generic = qcalc::gauss(2 * desc.d, desc.d + 1, desc.q()) * qcalc::theta(desc.d, desc.q());
            json out {{"descriptor", io::to_json(desc)}, {"generic", set.generic.size()}, {"special", set.special.size()},
                {"size", set.size()}, {"expected_generic", io::to_json(expected_generic)},
                {"expected_special", io::to_json(desc.expected_special_size())}};
            if (dump) {
                out["generic_flags"] = flags_json(set.generic, u);
                out["special_flags"] = flags_json(set.special, u);
            }
            emit_json(opt, out);
            return exit_ok;
        }

        if (i_check->parsed()) {
            const json in = read_json(opt);
            std::optional<indsets::IndSetDescriptor> desc;
            int dd = 0, qq = 0;
            if (in.contains("variant")) {
                desc = io::descriptor_from_json(in);
                dd = desc->d;
                qq = desc->q();
            } else {
                if (!in.contains("d") || !in.contains("q") || !in.contains("flags"))
                    throw Error(Errc::InvalidArgs, "expected a descriptor or {\"d\", \"q\", \"flags\"}");
                dd = in.at("d").get<int>();
                qq = in.at("q").get<int>();
                check_d(dd);
            }
            const auto u = kneser::FlagUniverse::kneser(dd, gf::make_field(qq));
            const auto set = desc ? indsets::build(*desc, u, exec).all() : ids_of(in.at("flags"), u);
            const auto edge = indsets::find_adjacent_pair(set, u, exec);
            json out {{"d", dd}, {"q", qq}, {"size", set.size()}, {"independent", !edge}};
            if (edge) {
                out["witness"] = json::array({io::to_json(u.flag(edge->first)), io::to_json(u.flag(edge->second))});
            } else {
                const auto ext = indsets::find_extension(set, u, exec);
                out["maximal"] = !ext;
                if (ext)
                    out["extension"] = io::to_json(u.flag(*ext));
                out["point_pencils"] = indsets::contained_point_pencils(set, u).size();
                out["dual_point_pencils"] = indsets::contained_dual_pencils(set, u).size();
                const auto cls = indsets::classify(set, u);
                out["classification"] = cls ? io::to_json(*cls) : json(nullptr);
            }
            emit_json(opt, out);
            return edge ? exit_invalid : exit_ok;
        }

        if (cv_build->parsed()) {
            check_d(d);
            emit_json(opt, io::to_json(cover::build_cover(d, gf::make_field(q))));
            return exit_ok;
        }

        if (cv_verify->parsed() || cv_dual->parsed()) {
            cover::CoverCertificate cert;
            try {
                cert = io::certificate_from_json(read_json(opt));
            } catch (const Error& e) {
                if (e.code() != Errc::MalformedCertificate)
                    throw;
                throw Invalid(e.what());
            }
            if (cv_dual->parsed()) {
                emit_json(opt, io::to_json(cover::dualize_cover(cert)));
                return exit_ok;
            }
            check_d(cert.d);
            const auto rep = cover::verify_cover(cert, exec);
            if (opt.human)
                emit(opt, human_report(rep));
            else
                emit_json(opt, io::to_json(rep));
            return rep.valid() ? exit_ok : exit_invalid;
        }

        if (ex->parsed()) {
            check_d(d);
            const auto u = kneser::FlagUniverse::kneser(d, gf::make_field(q));
            explore::ProbeOptions po;
            po.samples = samples;
            po.seed = seed;
            po.rho = parse_rational(rho);
            const auto st = explore::conjecture_probe(u, po, exec);
            if (!opt.human) {
                emit_json(opt, io::to_json(st));
                return exit_ok;
            }
            std::ostringstream s;
            s << "samples                 " << st.samples << "\nwith point-pencil       " << st.with_point_pencil
              << "\nwith dual point-pencil  " << st.with_dual_point_pencil << "\nsmall, no pencil        " << st.small_unstructured
              << "\nlarge, no pencil        " << st.unstructured_large.size() << "\nthreshold               " << st.threshold
              << "\nlargest set             " << st.max_size << "\n\n  size  count\n";
            for (const auto& [size, count] : st.size_histogram)
                s << std::setw(6) << size << std::setw(7) << count << "\n";
            emit(opt, s.str());
            return exit_ok;
        }
    } catch (const Invalid& e) {
        std::cerr << "qkneser: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "qkneser: " << e.what() << "\n";
        return exit_error;
    }
    std::cerr << app.help();
    return exit_error;
}
