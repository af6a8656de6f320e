#include "qkneser/explore.hpp"

#include "qkneser/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace qkneser::explore {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Fisher-Yates with plain modulo so the order is the same on every standard
// library (std::shuffle and the distributions are implementation-defined).
template <class T>
void portable_shuffle(std::vector<T>& v, std::mt19937_64& rng)
{
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

bool adjacent_to_any(FlagId f, const std::vector<FlagId>& chosen, const FlagUniverse& u)
{
    // recent members first: a rejected candidate is usually blocked by one
    for (auto it = chosen.rbegin(); it != chosen.rend(); ++it)
        if (u.adjacent(f, *it))
            return true;
    return false;
}

} // namespace

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::vector<FlagId> greedy_complete(std::span<const FlagId> seed_set, std::uint64_t rng_seed, const FlagUniverse& universe)
{
    const std::size_t n = universe.size();
    std::vector<char> taken(n, 0);
    std::vector<FlagId> chosen;
    for (FlagId f : seed_set) {
        if (f >= n)
            throw Error(Errc::InvalidArgs, "seed flag id out of range");
        if (taken[f])
            continue;
        taken[f] = 1;
        chosen.push_back(f);
    }
    if (auto e = indsets::find_adjacent_pair(chosen, universe))
        throw Error(Errc::NotIndependent,
            "seed set is not independent: flags " + std::to_string(e->first) + " and " + std::to_string(e->second) + " are adjacent");

    std::vector<FlagId> order(n);
    std::iota(order.begin(), order.end(), FlagId {0});
    std::mt19937_64 rng(rng_seed);
    portable_shuffle(order, rng);
    for (FlagId f : order) {
        if (taken[f] || adjacent_to_any(f, chosen, universe))
            continue;
        taken[f] = 1;
        chosen.push_back(f);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

SampleStats conjecture_probe(const FlagUniverse& universe, const ProbeOptions& opts, const Executor& exec)
{
    const int d = universe.kneser_d();
    if (d == 0)
        throw Error(Errc::InvalidType, "conjecture_probe needs the {d, d+1} flag graph");
    if (opts.samples == 0)
        throw Error(Errc::InvalidArgs, "samples must be at least 1");
    if (opts.rho < 0)
        throw Error(Errc::InvalidArgs, "rho must be nonnegative");

    SampleStats st;
    st.d = d;
    st.q = universe.field().q();
    st.samples = opts.samples;
    st.scale = qcalc::ipow(st.q, d * d + d - 2);
    const qcalc::Rational scaled = opts.rho * qcalc::Rational(st.scale);
    st.threshold = numerator(scaled) / denominator(scaled);

    enum class Bucket : std::uint8_t { PointPencil, DualPencil, Small, Large };
    struct Outcome {
        std::size_t size = 0;
        Bucket bucket = Bucket::Small;
        bool classified = false;
    };
    std::vector<Outcome> out(opts.samples);

    exec.parallel_for(opts.samples, 1, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const std::uint64_t s = stream_seed(opts.seed, i);
            std::mt19937_64 rng(s);
            std::vector<FlagId> seed_set = opts.seed_set;
            if (seed_set.empty())
                seed_set.push_back(static_cast<FlagId>(rng() % universe.size()));
            const auto set = greedy_complete(seed_set, rng(), universe);
            Outcome& o = out[i];
            o.size = set.size();
            if (!indsets::contained_point_pencils(set, universe).empty())
                o.bucket = Bucket::PointPencil;
            else if (!indsets::contained_dual_pencils(set, universe).empty())
                o.bucket = Bucket::DualPencil;
            else
                o.bucket = qcalc::QInt(set.size()) > st.threshold ? Bucket::Large : Bucket::Small;
            o.classified = indsets::classify(set, universe).has_value();
        }
    });

    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& o = out[i];
        ++st.size_histogram[o.size];
        st.max_size = std::max(st.max_size, o.size);
        if (o.classified)
            ++st.classified;
        switch (o.bucket) {
        case Bucket::PointPencil:
            ++st.with_point_pencil;
            break;
        case Bucket::DualPencil:
            ++st.with_dual_point_pencil;
            break;
        case Bucket::Small:
            ++st.small_unstructured;
            st.max_unstructured_size = std::max(st.max_unstructured_size, o.size);
            break;
        case Bucket::Large:
            st.unstructured_large.push_back({o.size, stream_seed(opts.seed, i)});
            st.max_unstructured_size = std::max(st.max_unstructured_size, o.size);
            break;
        }
    }
    return st;
}

Coloring greedy_color(const FlagUniverse& universe, ColorOrder order, std::uint64_t seed, std::size_t vertex_cap,
    const Executor& exec)
{
    const std::size_t n = universe.size();
    if (n > vertex_cap)
        throw Error(Errc::TooLarge,
            "greedy colouring is capped at " + std::to_string(vertex_cap) + " vertices, graph has " + std::to_string(n));

    std::vector<FlagId> visit(n);
    std::iota(visit.begin(), visit.end(), FlagId {0});
    if (order == ColorOrder::DegreeRandom) {
        std::vector<std::size_t> degree(n, 0);
        exec.parallel_for(n, 64, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                degree[i] = universe.neighbors(static_cast<FlagId>(i)).size();
        });
        std::mt19937_64 rng(seed);
        portable_shuffle(visit, rng);
        std::stable_sort(visit.begin(), visit.end(), [&](FlagId a, FlagId b) { return degree[a] > degree[b]; });
    }

    constexpr std::uint32_t none = ~std::uint32_t {0};
    Coloring c;
    c.color.assign(n, none);
    std::vector<char> used;
    std::vector<FlagId> coloured;
    coloured.reserve(n);
    for (FlagId v : visit) {
        used.assign(c.colors + 1, 0);
        for (FlagId w : coloured)
            if (universe.adjacent(v, w))
                used[c.color[w]] = 1;
        std::uint32_t k = 0;
        while (used[k])
            ++k;
        c.color[v] = k;
        c.colors = std::max(c.colors, k + 1);
        coloured.push_back(v);
    }
    return c;
}

bool is_proper(const Coloring& c, const FlagUniverse& universe, const Executor& exec)
{
    if (c.color.size() != universe.size())
        return false;
    std::vector<std::vector<FlagId>> classes(c.colors);
    for (std::size_t i = 0; i < c.color.size(); ++i) {
        if (c.color[i] >= c.colors)
            return false;
        classes[c.color[i]].push_back(static_cast<FlagId>(i));
    }
    return std::all_of(classes.begin(), classes.end(),
        [&](const auto& cls) { return indsets::is_independent(cls, universe, exec); });
}

} // namespace qkneser::explore
