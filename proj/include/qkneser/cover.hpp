#pragma once

#include "qkneser/executor.hpp"
#include "qkneser/indsets.hpp"
#include "qkneser/qcalc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qkneser::cover {

using indsets::IndSetDescriptor;
using kneser::Flag;
using kneser::FlagUniverse;
using pg::Field;
using pg::Subspace;
using qcalc::QInt;

/// A list of independent-set descriptors claimed to cover every flag of type
/// {d, d+1} in GF(q)^{2d+1}. `anchor` is the rank-(d+2) subspace the base
/// points were drawn from (its dual after dualization); the verifier only
/// reports on it.
struct CoverCertificate {
    int d = 0;
    int q = 0;
    std::optional<Subspace> anchor;
    std::vector<IndSetDescriptor> classes;
    std::string provenance;
};

struct ClassSize {
    std::size_t index = 0;
    std::string variant;
    std::uint64_t generic = 0;
    std::uint64_t special = 0;
    QInt expected_generic;
    QInt expected_special;

    bool matches() const { return expected_generic == generic && expected_special == special; }
};

struct BadClass {
    std::size_t index = 0;
    Flag first;
    Flag second;
};

struct VerifyReport {
    QInt total_flags;
    QInt covered;
    std::uint64_t missing_count = 0;
    std::vector<Flag> missing; ///< first few uncovered flags, in enumeration order
    std::vector<BadClass> bad_classes;
    std::vector<ClassSize> class_sizes;

    bool valid() const { return missing_count == 0 && bad_classes.empty(); }
    bool sizes_match() const;
};

/// The covering with theta(d+1, q) - q point-line classes: U = <e1..e_{d+2}>,
/// the line <e1, e2> with its points P0..Pq in enumeration order,
/// W = {P1..Pq}, and in every plane of U through that line the q lines
/// through P0 other than it paired with W in canonical order.
CoverCertificate build_cover(int d, const Field& field);

struct VerifyOptions {
    std::size_t missing_limit = 16;
    /// Reuse an existing universe of the right (d, q) instead of enumerating.
    const FlagUniverse* universe = nullptr;
};

/// Exhaustive check: every flag lies in some class and every class is
/// independent. Class sizes are compared with the closed forms and reported.
/// Throws Error(MalformedCertificate) when a class violates its descriptor
/// invariants or disagrees with the certificate's (d, q).
VerifyReport verify_cover(const CoverCertificate& cert, const Executor& exec = Executor(1), VerifyOptions opts = {});

/// Every class replaced by its dual descriptor, the anchor by its dual.
CoverCertificate dualize_cover(const CoverCertificate& cert);

/// Same (d, q) and the same classes as multisets.
bool same_up_to_order(const CoverCertificate& a, const CoverCertificate& b);

struct Bracket {
    QInt lower; ///< ceil(flag_count / e0)
    QInt upper; ///< theta(d+1, q) - q
};

/// Heuristic bracket on the chromatic number: e0 is the size of the largest
/// known independent sets, not a proven independence number.
Bracket chromatic_bracket(int d, std::int64_t q);

} // namespace qkneser::cover
