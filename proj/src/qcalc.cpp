#include "qkneser/qcalc.hpp"

#include "qkneser/error.hpp"


namespace qkneser::qcalc {

QInt ipow(const QInt& base, unsigned exponent)
{
    return boost::multiprecision::pow(base, exponent);
}

QInt gauss(int a, int b, std::int64_t q)
{
    if (q < 2 || b < 0 || a < b)
        throw Error(Errc::InvalidArgs,
            "gauss(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(q) + ") needs q >= 2, a >= b >= 0");
    QInt num = 1, den = 1;
    const QInt Q = q;
    for (int i = 1; i <= b; ++i) {
        num *= ipow(Q, static_cast<unsigned>(a - b + i)) - 1;
        den *= ipow(Q, static_cast<unsigned>(i)) - 1;
    }
    assert(num % den == 0);
    return num / den;
}

QInt theta(int j, std::int64_t q)
{
    if (j < 0)
        throw Error(Errc::InvalidArgs, "theta needs j >= 0");
    return gauss(j + 1, 1, q);
}

QInt flag_count(int d, std::int64_t q)
{
    if (d < 1)
        throw Error(Errc::InvalidArgs, "flag_count needs d >= 1");
    QInt by_d = gauss(2 * d + 1, d, q) * theta(d, q);
    if (by_d != gauss(2 * d + 1, d + 1, q) * theta(d, q))
        throw Error(Errc::InvalidArgs, "flag_count: the two factorizations disagree");
    return by_d;
}

SizeConstants size_constants(int d, std::int64_t q, std::int64_t alpha)
{
    if (d < 2 || q < 2 || alpha < 1)
        throw Error(Errc::InvalidArgs, "size_constants needs d >= 2, q >= 2, alpha >= 1");
    SizeConstants s;
    s.d = d;
    s.q = q;
    s.alpha = alpha;
    const QInt qd = ipow(QInt(q), static_cast<unsigned>(d));
    s.g0 = gauss(2 * d, d + 1, q) * theta(d, q);
    s.e0 = s.g0 + gauss(2 * d - 1, d - 1, q) * qd;
    s.e1 = QInt(alpha) * ipow(QInt(q), static_cast<unsigned>(d * d + d - 2));
    s.delta = gauss(2 * d - 1, d, q) * qd;
    return s;
}

QInt chromatic_value(int d, std::int64_t q)
{
    if (d < 1)
        throw Error(Errc::InvalidArgs, "chromatic_value needs d >= 1");
    return theta(d + 1, q) - q;
}

Rational family_size_bound_exact(int d, std::int64_t q)
{
    if (d < 2 || q < 2)
        throw Error(Errc::InvalidArgs, "family_size_bound needs d >= 2, q >= 2");
    const Rational factor = Rational(q + 1, q);
    return factor * Rational(theta(d - 2, q)) * Rational(ipow(theta(d - 1, q), static_cast<unsigned>(d - 1)));
}

QInt family_size_bound(int d, std::int64_t q)
{
    // greatest integer strictly below the bound
    return ceil_div(family_size_bound_exact(d, q)) - 1;
}

QInt ceil_div(const Rational& r)
{
    const QInt num = boost::multiprecision::numerator(r);
    const QInt den = boost::multiprecision::denominator(r);
    QInt quo = num / den;
    if (quo * den < num)
        ++quo;
    return quo;
}

std::vector<BoundPoint> bound_grid(std::int64_t q_max, int n_max, int c_max)
{
    std::vector<BoundPoint> pts;
    for (std::int64_t q = 4; q <= q_max; ++q)
        for (int n = 2; n <= n_max; ++n)
            for (int k = 1; k < n; ++k)
                pts.push_back({BoundPart::A, q, n, k, 0});
    for (int c = 1; c <= c_max; ++c) {
        for (std::int64_t q = static_cast<std::int64_t>(c) * c + c + 1; q <= q_max; ++q) {
            pts.push_back({BoundPart::B, q, 0, 0, c});
            pts.push_back({BoundPart::C, q, 0, 0, c});
        }
    }
    return pts;
}

std::string to_string(const BoundPoint& p)
{
    switch (p.part) {
    case BoundPart::A:
        return "(a) n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) + " q=" + std::to_string(p.q);
    case BoundPart::B:
        return "(b) c=" + std::to_string(p.c) + " q=" + std::to_string(p.q);
    case BoundPart::C:
        return "(c) c=" + std::to_string(p.c) + " q=" + std::to_string(p.q);
    }
    return "?";
}

BoundReport check_gauss_bounds(std::span<const BoundPoint> points)
{
    BoundReport rep;
    for (const auto& p : points) {
        const QInt Q = p.q;
        switch (p.part) {
        case BoundPart::A: {
            if (!(p.n > p.k && p.k > 0 && p.q >= 4))
                throw Error(Errc::HypothesisViolation, to_string(p) + " outside n > k > 0, q >= 4");
            const QInt base = ipow(Q, static_cast<unsigned>(p.k * (p.n - p.k) - 1));
            const QInt g = gauss(p.n, p.k, p.q);
            const QInt lo = (Q + 1) * base;
            const QInt hi = (Q + 2) * base;
            if (!(lo <= g))
                rep.violations.push_back({p, lo, g, "lower"});
            if (!(g <= hi))
                rep.violations.push_back({p, g, hi, "upper"});
            ++rep.checked_a;
            break;
        }
        case BoundPart::B: {
            if (!(p.c >= 1 && p.q > static_cast<std::int64_t>(p.c) * p.c + p.c))
                throw Error(Errc::HypothesisViolation, to_string(p) + " outside q > c^2 + c");
            const QInt lhs = ipow(Q * Q + Q + 2, static_cast<unsigned>(p.c));
            const QInt rhs = (Q + p.c + 1) * ipow(Q, static_cast<unsigned>(2 * p.c - 1));
            if (!(lhs <= rhs))
                rep.violations.push_back({p, lhs, rhs, "single"});
            ++rep.checked_b;
            break;
        }
        case BoundPart::C: {
            if (!(p.c >= 1 && p.q > static_cast<std::int64_t>(p.c) * p.c + p.c))
                throw Error(Errc::HypothesisViolation, to_string(p) + " outside q > c^2 + c");
            const QInt lhs = ipow(theta(p.c, p.q), static_cast<unsigned>(p.c));
            const QInt rhs = (Q + p.c + 1) * ipow(Q, static_cast<unsigned>(p.c * p.c - 1));
            if (!(lhs <= rhs))
                rep.violations.push_back({p, lhs, rhs, "single"});
            ++rep.checked_c;
            break;
        }
        }
    }
    return rep;
}

Rational growth_bound(std::int64_t q, int d, const Rational& d0, const Rational& n0)
{
    if (q < 2 || d < 1 || d0 <= 0 || n0 <= 0)
        throw Error(Errc::InvalidArgs, "growth_bound needs q >= 2, d >= 1, d0 > 0, n0 > 0");
    const unsigned exponent = (1u << static_cast<unsigned>(d + 1)) - 1u;
    const Rational base = d0 / (Rational(4) * n0);
    const Rational lead = Rational(ipow(QInt(2 * q), static_cast<unsigned>(d + 1)));
    const QInt num = ipow(boost::multiprecision::numerator(base), exponent);
    const QInt den = ipow(boost::multiprecision::denominator(base), exponent);
    return lead * Rational(num, den);
}

bool growth_bound_reaches_3qd(std::int64_t q, int d)
{
    return growth_bound(q, d, Rational(1, 4), Rational(7)) >= Rational(3 * ipow(QInt(q), static_cast<unsigned>(d)));
}

Thresholds q_thresholds(int d, std::int64_t alpha)
{
    if (d < 3 || alpha < 5)
        throw Error(Errc::InvalidArgs, "q_thresholds needs d >= 3 and alpha >= 5");
    Thresholds t;
    const unsigned exponent = (1u << static_cast<unsigned>(d + 1)) - 1u;
    const Rational geo = Rational(3 * ipow(QInt(112), exponent), ipow(QInt(2), static_cast<unsigned>(d + 1)));
    t.geometric.value = ceil_div(geo);
    t.geometric.strict = true;
    t.geometric.expression = "3*112^" + std::to_string(exponent) + "*2^-" + std::to_string(d + 1);

    const Rational a = Rational(3 * alpha * alpha + 21 * alpha + 34, 2);
    t.alpha.value = ceil_div(a);
    t.alpha.strict = false;
    t.alpha.expression = "(3/2)*" + std::to_string(alpha) + "^2+(21/2)*" + std::to_string(alpha) + "+17";
    return t;
}

} // namespace qkneser::qcalc
