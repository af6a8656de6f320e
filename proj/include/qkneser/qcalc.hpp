#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qkneser::qcalc {

using QInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

QInt ipow(const QInt& base, unsigned exponent);

/// Gaussian binomial [a b]_q. q need not be a prime power here; the
/// inequality checks evaluate it at arbitrary integers q >= 2.
/// Throws Error(InvalidArgs) unless q >= 2 and a >= b >= 0.
QInt gauss(int a, int b, std::int64_t q);

/// theta_j = [j+1 1]_q = (q^{j+1} - 1)/(q - 1).
QInt theta(int j, std::int64_t q);

/// Number of flags of type {d, d+1} in rank 2d+1:
/// gauss(2d+1, d) * theta(d). Asserts agreement with gauss(2d+1, d+1) * theta(d).
QInt flag_count(int d, std::int64_t q);

struct SizeConstants {
    int d = 0;
    std::int64_t q = 0;
    std::int64_t alpha = 0;
    QInt g0;    ///< generic-part size of a point-based set
    QInt e0;    ///< g0 plus the largest special part
    QInt e1;    ///< alpha * q^{d^2+d-2}
    QInt delta; ///< gauss(2d-1, d) q^d, bound on any special part

    bool ordered() const { return e1 < g0 && g0 < e0; }
};

SizeConstants size_constants(int d, std::int64_t q, std::int64_t alpha);

/// theta(d+1, q) - q: the size of the constructed coverings.
QInt chromatic_value(int d, std::int64_t q);

/// Largest |U| allowed for a maximal point-based set whose special part is
/// based on neither a line nor a hyperplane: the greatest integer strictly
/// below (1 + 1/q) theta_{d-2} theta_{d-1}^{d-1}.
QInt family_size_bound(int d, std::int64_t q);
Rational family_size_bound_exact(int d, std::int64_t q);

// Gaussian-binomial inequalities -------------------------------------------

enum class BoundPart { A, B, C };

struct BoundPoint {
    BoundPart part = BoundPart::A;
    std::int64_t q = 0;
    int n = 0; ///< part A only
    int k = 0; ///< part A only
    int c = 0; ///< parts B and C
};

struct BoundViolation {
    BoundPoint point;
    QInt lhs;
    QInt rhs;
    std::string which; ///< "lower", "upper", or "single"
};

struct BoundReport {
    std::size_t checked_a = 0;
    std::size_t checked_b = 0;
    std::size_t checked_c = 0;
    std::vector<BoundViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// Every hypothesis-respecting point with q <= q_max, n <= n_max, c <= c_max:
/// (A) n > k > 0, q >= 4; (B), (C) c >= 1, q > c^2 + c.
std::vector<BoundPoint> bound_grid(std::int64_t q_max, int n_max, int c_max);

/// (A) (q+1) q^{k(n-k)-1} <= [n k]_q <= (q+2) q^{k(n-k)-1}
/// (B) (q^2+q+2)^c <= (q+c+1) q^{2c-1}
/// (C) theta_c^c <= (q+c+1) q^{c^2-1}
/// Throws Error(HypothesisViolation) naming the first point outside its
/// part's hypotheses.
BoundReport check_gauss_bounds(std::span<const BoundPoint> points);

std::string to_string(const BoundPoint& p);

// Point-set growth bound -----------------------------------------------------

/// (2q)^{d+1} (d0 / (4 n0))^{2^{d+1} - 1}
Rational growth_bound(std::int64_t q, int d, const Rational& d0, const Rational& n0);

/// The bound at d0 = 1/4, n0 = 7 compared with 3 q^d.
bool growth_bound_reaches_3qd(std::int64_t q, int d);

// Thresholds on q ------------------------------------------------------------

struct Threshold {
    QInt value;
    bool strict = false; ///< q > value when true, q >= value otherwise
    std::string expression;

    bool admits(const QInt& q) const { return strict ? q > value : q >= value; }
};

struct Thresholds {
    Threshold geometric; ///< q > 3 * 112^{2^{d+1}-1} * 2^{-d-1}
    Threshold alpha;     ///< q >= (3/2) alpha^2 + (21/2) alpha + 17
};

/// Throws Error(InvalidArgs) unless d >= 3 and alpha >= 5.
Thresholds q_thresholds(int d, std::int64_t alpha);

QInt ceil_div(const Rational& r);

} // namespace qkneser::qcalc
