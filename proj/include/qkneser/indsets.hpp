#pragma once

#include "qkneser/executor.hpp"
#include "qkneser/kneser.hpp"
#include "qkneser/qcalc.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace qkneser::indsets {

using kneser::Flag;
using kneser::FlagId;
using kneser::FlagUniverse;
using pg::Subspace;

// Independent-set families of the {d, d+1} flag graph in rank 2d+1. Ranks
// are vector-space ranks: a point has rank 1, a line rank 2, a hyperplane
// rank 2d. Point-based sets take every flag whose rank-d member pi contains
// the base point (generic part) plus extra flags selected by their rank-(d+1)
// member tau (special part); hyperplane-based sets are the duals.

struct PointPencil { Subspace point; friend bool operator==(const PointPencil&, const PointPencil&) = default; };
struct GenericOnly { Subspace point; friend bool operator==(const GenericOnly&, const GenericOnly&) = default; };
/// Special part: every tau through the line.
struct PointLine {
    Subspace point, line;
    friend bool operator==(const PointLine&, const PointLine&) = default;
};
/// Special part: every tau with point <= tau <= hyperplane.
struct PointHyperplane {
    Subspace point, hyperplane;
    friend bool operator==(const PointHyperplane&, const PointHyperplane&) = default;
};
/// Special part: tau in an explicit family of rank-(d+1) subspaces through
/// the point, pairwise meeting in rank >= 2. Kept sorted.
struct PointFamily {
    Subspace point;
    std::vector<Subspace> family;
    friend bool operator==(const PointFamily&, const PointFamily&) = default;
};

struct DualPointPencil { Subspace hyperplane; friend bool operator==(const DualPointPencil&, const DualPointPencil&) = default; };
struct DualGenericOnly { Subspace hyperplane; friend bool operator==(const DualGenericOnly&, const DualGenericOnly&) = default; };
/// Special part: every pi inside a rank-(2d-1) subspace of the hyperplane.
struct HyperplaneColine {
    Subspace hyperplane, coline;
    friend bool operator==(const HyperplaneColine&, const HyperplaneColine&) = default;
};
/// Special part: every pi with point <= pi <= hyperplane.
struct HyperplanePoint {
    Subspace hyperplane, point;
    friend bool operator==(const HyperplanePoint&, const HyperplanePoint&) = default;
};
/// Special part: pi in an explicit family of rank-d subspaces of the
/// hyperplane with pairwise nonzero meets. Kept sorted.
struct HyperplaneFamily {
    Subspace hyperplane;
    std::vector<Subspace> family;
    friend bool operator==(const HyperplaneFamily&, const HyperplaneFamily&) = default;
};

using Shape = std::variant<PointPencil, DualPointPencil, PointLine, PointHyperplane, PointFamily, HyperplaneFamily,
    GenericOnly, DualGenericOnly, HyperplaneColine, HyperplanePoint>;

struct IndSetDescriptor {
    int d = 0;
    Shape shape;

    int q() const;
    bool point_based() const;
    /// Base point (point-based) or base hyperplane.
    const Subspace& base() const;
    std::string_view variant_name() const;
    /// Number of flags in the special part when every member of the shape
    /// is as described: |family| q^d.
    qcalc::QInt expected_special_size() const;

    friend bool operator==(const IndSetDescriptor&, const IndSetDescriptor&) = default;
};

/// Throws Error(InvalidDescriptor) naming the violated invariant.
void validate(const IndSetDescriptor& desc);

/// Sorts and deduplicates families; call after building a descriptor by hand.
IndSetDescriptor normalized(IndSetDescriptor desc);

/// Dual descriptor: every subspace replaced by its orthogonal complement and
/// the variant swapped (point <-> hyperplane, line <-> coline).
IndSetDescriptor dual(const IndSetDescriptor& desc);

/// (pi, tau) -> (tau^perp, pi^perp); a graph automorphism of the flag graph.
Flag dual_flag(const Flag& f);

enum class Part : std::uint8_t { None, Generic, Special };

/// Part of the descriptor's set that f falls in, by subspace algebra.
Part part_of(const IndSetDescriptor& desc, const Flag& f);

/// The same predicate compiled against a universe's point masks.
class Membership {
public:
    Membership(const IndSetDescriptor& desc, const FlagUniverse& universe);

    Part part(FlagId id) const;
    bool contains(FlagId id) const { return part(id) != Part::None; }

private:
    const FlagUniverse* universe_;
    std::size_t kind_;
    bool point_based_;
    std::uint32_t base_point_ = 0;
    std::uint32_t aux_point_ = 0;
    std::vector<std::uint64_t> base_mask_; // hyperplane
    std::vector<std::uint64_t> aux_mask_;  // line / coline / hyperplane
    std::unordered_set<Subspace, pg::SubspaceHash> family_;
};

struct SplitSet {
    std::vector<FlagId> generic;
    std::vector<FlagId> special;

    std::size_t size() const { return generic.size() + special.size(); }
    /// Union in id order.
    std::vector<FlagId> all() const;
};

SplitSet build(const IndSetDescriptor& desc, const FlagUniverse& universe, const Executor& exec = Executor(1));

using Edge = std::pair<FlagId, FlagId>;

/// nullopt when independent; otherwise the adjacent pair (members i < j by
/// position in `set`) with the smallest i, then smallest j.
std::optional<Edge> find_adjacent_pair(std::span<const FlagId> set, const FlagUniverse& universe,
    const Executor& exec = Executor(1));

inline bool is_independent(std::span<const FlagId> set, const FlagUniverse& universe, const Executor& exec = Executor(1))
{
    return !find_adjacent_pair(set, universe, exec).has_value();
}

/// nullopt when every flag outside `set` is adjacent to a member; otherwise
/// the smallest-id flag that could be added. `set` must be sorted and
/// independent.
std::optional<FlagId> find_extension(std::span<const FlagId> set, const FlagUniverse& universe,
    const Executor& exec = Executor(1));

inline bool is_maximal(std::span<const FlagId> set, const FlagUniverse& universe, const Executor& exec = Executor(1))
{
    return !find_extension(set, universe, exec).has_value();
}

/// Point ids P with F(P) contained in `set` (sorted set of ids).
std::vector<std::uint32_t> contained_point_pencils(std::span<const FlagId> set, const FlagUniverse& universe);
/// Hyperplanes H with F(H) contained in `set`, identified by the point id of H^perp.
std::vector<std::uint32_t> contained_dual_pencils(std::span<const FlagId> set, const FlagUniverse& universe);

/// Recovers a descriptor whose build() equals `set`, or nullopt
/// (unstructured). Exact on build() outputs; best effort otherwise. A bare
/// pencil is reported as GenericOnly / DualGenericOnly, and a family that is
/// exactly all tau through a line (resp. inside a hyperplane) is reported as
/// the line (resp. hyperplane) variant.
std::optional<IndSetDescriptor> classify(std::span<const FlagId> set, const FlagUniverse& universe);

inline qcalc::QInt family_size_bound(int d, std::int64_t q) { return qcalc::family_size_bound(d, q); }

} // namespace qkneser::indsets
