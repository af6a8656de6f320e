#pragma once

#include "qkneser/executor.hpp"
#include "qkneser/indsets.hpp"
#include "qkneser/qcalc.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qkneser::explore {

using kneser::FlagId;
using kneser::FlagUniverse;

/// Seed of the independent rng stream for sample `index` under `master`.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

/// Extends an independent set to a maximal one: members of seed_set first,
/// then every other flag in a seeded random order, each taken when it is
/// adjacent to nothing chosen so far. Returns the set sorted by id.
/// Throws Error(NotIndependent) when seed_set is not independent.
std::vector<FlagId> greedy_complete(std::span<const FlagId> seed_set, std::uint64_t rng_seed, const FlagUniverse& universe);

struct ProbeOptions {
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    /// Sets with neither pencil and more than rho * q^{d^2+d-2} flags are
    /// listed as unstructured_large.
    qcalc::Rational rho = 1;
    /// When nonempty, every sample starts from this set instead of one
    /// uniformly random flag.
    std::vector<FlagId> seed_set;
};

struct UnstructuredSample {
    std::size_t size = 0;
    std::uint64_t seed = 0;
};

struct SampleStats {
    int d = 0;
    int q = 0;
    std::size_t samples = 0;
    std::map<std::size_t, std::size_t> size_histogram;
    std::size_t with_point_pencil = 0;
    std::size_t with_dual_point_pencil = 0; ///< and no point-pencil
    std::size_t small_unstructured = 0;     ///< neither pencil, at most the threshold
    std::vector<UnstructuredSample> unstructured_large;
    std::size_t classified = 0; ///< samples recognised as an explicit family
    std::size_t max_unstructured_size = 0;
    qcalc::QInt threshold;  ///< floor(rho * q^{d^2+d-2})
    qcalc::QInt scale;      ///< q^{d^2+d-2}
    std::size_t max_size = 0;
};

/// Samples maximal independent sets and buckets them by whether they contain
/// a point-pencil, a dual point-pencil, or neither. Each sample uses its own
/// stream_seed(seed, index), so results do not depend on the executor.
SampleStats conjecture_probe(const FlagUniverse& universe, const ProbeOptions& opts, const Executor& exec = Executor(1));

enum class ColorOrder { Enumeration, DegreeRandom };

struct Coloring {
    std::vector<std::uint32_t> color; ///< per flag id
    std::uint32_t colors = 0;
};

inline constexpr std::size_t default_color_cap = 20000;

/// First-fit colouring. DegreeRandom visits vertices by decreasing degree
/// with ties broken by a seeded shuffle. Throws Error(TooLarge) above cap.
Coloring greedy_color(const FlagUniverse& universe, ColorOrder order, std::uint64_t seed = 1,
    std::size_t vertex_cap = default_color_cap, const Executor& exec = Executor(1));

/// Every colour class independent.
bool is_proper(const Coloring& c, const FlagUniverse& universe, const Executor& exec = Executor(1));

} // namespace qkneser::explore
