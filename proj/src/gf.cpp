#include "qkneser/gf.hpp"

#include "qkneser/error.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace qkneser {

std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::Unsupported: return "Unsupported";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgs: return "InvalidArgs";
    case Errc::HypothesisViolation: return "HypothesisViolation";
    case Errc::InvalidType: return "InvalidType";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::MalformedCertificate: return "MalformedCertificate";
    case Errc::NotIndependent: return "NotIndependent";
    }
    return "Unknown";
}

} // namespace qkneser

namespace qkneser::gf {

namespace {

constexpr std::array<int, 7> kSupported {2, 3, 4, 5, 7, 8, 9};

struct PinnedPoly {
    int q;
    std::vector<int> coeffs; // constant term first, monic
};

// Smallest-weight irreducibles; changing any entry changes every canonical
// basis over that field.
const std::vector<PinnedPoly>& pinned_polys()
{
    static const std::vector<PinnedPoly> table {
        {4, {1, 1, 1}},    // x^2 + x + 1
        {8, {1, 1, 0, 1}}, // x^3 + x + 1
        {9, {1, 0, 1}},    // x^2 + 1
    };
    return table;
}

// Decomposes q = p^k; returns false if q is not a prime power.
bool prime_power(int q, int& p, int& k)
{
    if (q < 2)
        return false;
    int n = q;
    p = 0;
    for (int f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            p = f;
            break;
        }
    }
    if (p == 0)
        p = n;
    k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return n == 1;
}

std::vector<int> to_digits(int value, int p, int k)
{
    std::vector<int> d(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        d[static_cast<std::size_t>(i)] = value % p;
        value /= p;
    }
    return d;
}

int from_digits(const std::vector<int>& d, int p)
{
    int v = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it)
        v = v * p + *it;
    return v;
}

// Remainder of a modulo b over GF(p); b monic not required, but its leading
// coefficient must be nonzero. Coefficients constant term first.
std::vector<int> poly_mod(std::vector<int> a, std::span<const int> b, int p)
{
    auto trim = [](std::vector<int>& v) {
        while (!v.empty() && v.back() == 0)
            v.pop_back();
    };
    trim(a);
    std::vector<int> bb(b.begin(), b.end());
    trim(bb);
    const int lead = bb.back();
    int lead_inv = 1;
    while ((lead * lead_inv) % p != 1)
        ++lead_inv;
    while (a.size() >= bb.size()) {
        const int factor = (a.back() * lead_inv) % p;
        const std::size_t shift = a.size() - bb.size();
        for (std::size_t i = 0; i < bb.size(); ++i)
            a[shift + i] = ((a[shift + i] - factor * bb[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p)
{
    std::vector<int> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

} // namespace

Field::Field(int q, int p, int k, std::vector<int> poly)
    : q_(q)
    , p_(p)
    , k_(k)
    , poly_(std::move(poly))
{
    for (int a = 0; a < q; ++a) {
        const auto da = to_digits(a, p, k);
        for (int b = 0; b < q; ++b) {
            const auto db = to_digits(b, p, k);
            std::vector<int> s(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                s[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
            add_[a][b] = static_cast<Scalar>(from_digits(s, p));

            std::vector<int> m;
            if (k == 1) {
                m = {(a * b) % p};
            } else {
                m = poly_mod(poly_mul(da, db, p), poly_, p);
                m.resize(static_cast<std::size_t>(k), 0);
            }
            mul_[a][b] = static_cast<Scalar>(from_digits(m, p));
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (add_[a][b] == 0)
                neg_[a] = static_cast<Scalar>(b);
            if (mul_[a][b] == 1)
                inv_[a] = static_cast<Scalar>(b);
        }
    }
}

Scalar Field::inv(Scalar a) const
{
    if (a == 0)
        throw Error(Errc::DivisionByZero, "inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

Scalar Field::pow(Scalar a, unsigned e) const noexcept
{
    Scalar r = 1;
    while (e) {
        if (e & 1u)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string Field::describe() const
{
    std::string s = "GF(" + std::to_string(q_) + ")";
    if (k_ == 1)
        return s;
    s += " = GF(" + std::to_string(p_) + ")[x]/(";
    bool first = true;
    for (int i = static_cast<int>(poly_.size()) - 1; i >= 0; --i) {
        const int c = poly_[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        if (!first)
            s += "+";
        first = false;
        if (c != 1 || i == 0)
            s += std::to_string(c);
        if (i >= 1)
            s += "x";
        if (i >= 2)
            s += "^" + std::to_string(i);
    }
    return s + ")";
}

bool is_supported(int q) noexcept
{
    return std::find(kSupported.begin(), kSupported.end(), q) != kSupported.end();
}

std::span<const int> supported_orders() noexcept { return kSupported; }

bool is_irreducible(std::span<const int> poly, int p)
{
    const int deg = static_cast<int>(poly.size()) - 1;
    if (deg < 1)
        return false;
    if (deg == 1)
        return true;
    for (int dd = 1; dd <= deg / 2; ++dd) {
        int count = 1;
        for (int i = 0; i < dd; ++i)
            count *= p;
        for (int low = 0; low < count; ++low) {
            auto divisor = to_digits(low, p, dd);
            divisor.push_back(1);
            if (poly_mod(std::vector<int>(poly.begin(), poly.end()), divisor, p).empty())
                return false;
        }
    }
    return true;
}

const Field& make_field(int q)
{
    int p = 0, k = 0;
    if (!prime_power(q, p, k))
        throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
    if (!is_supported(q))
        throw Error(Errc::Unsupported, "GF(" + std::to_string(q) + ") is outside the supported set {2,3,4,5,7,8,9}");

    static std::mutex mu;
    static std::map<int, std::unique_ptr<Field>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[q];
    if (!slot) {
        std::vector<int> poly;
        for (const auto& e : pinned_polys())
            if (e.q == q)
                poly = e.coeffs;
        slot.reset(new Field(q, p, k, std::move(poly)));
    }
    return *slot;
}

std::uint64_t polynomial_table_hash()
{
    // FNV-1a over "q:c0,c1,...;" for each pinned entry
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& e : pinned_polys()) {
        std::string s = std::to_string(e.q) + ":";
        for (int c : e.coeffs)
            s += std::to_string(c) + ",";
        feed(s + ";");
    }
    return h;
}

} // namespace qkneser::gf
