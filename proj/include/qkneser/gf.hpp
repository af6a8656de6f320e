#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qkneser::gf {

/// Field element index in [0, q). For q = p^k, the base-p digits of the
/// index are the coefficients of the polynomial representative, lowest
/// degree first. 0 and 1 are the additive and multiplicative identities.
using Scalar = std::uint8_t;

inline constexpr int max_order = 9;

/// GF(q) with full q x q operation tables. Instances are immutable and live
/// for the whole program; obtain them through make_field().
class Field {
public:
    int q() const noexcept { return q_; }
    int p() const noexcept { return p_; }
    int k() const noexcept { return k_; }

    /// Coefficients of the monic reduction polynomial, constant term first,
    /// leading 1 included. Empty for prime fields.
    const std::vector<int>& reduction_poly() const noexcept { return poly_; }

    Scalar add(Scalar a, Scalar b) const noexcept { return add_[a][b]; }
    Scalar sub(Scalar a, Scalar b) const noexcept { return add_[a][neg_[b]]; }
    Scalar mul(Scalar a, Scalar b) const noexcept { return mul_[a][b]; }
    Scalar neg(Scalar a) const noexcept { return neg_[a]; }
    Scalar inv(Scalar a) const;
    Scalar pow(Scalar a, unsigned e) const noexcept;

    /// Human-readable description, e.g. "GF(4) = GF(2)[x]/(x^2+x+1)".
    std::string describe() const;

    bool operator==(const Field& other) const noexcept { return q_ == other.q_; }

private:
    friend const Field& make_field(int q);
    Field(int q, int p, int k, std::vector<int> poly);

    int q_, p_, k_;
    std::vector<int> poly_;
    std::array<std::array<Scalar, max_order>, max_order> add_ {};
    std::array<std::array<Scalar, max_order>, max_order> mul_ {};
    std::array<Scalar, max_order> neg_ {};
    std::array<Scalar, max_order> inv_ {};
};

/// Returns the process-wide field of order q.
/// Throws Error(NotPrimePower) or Error(Unsupported).
const Field& make_field(int q);

bool is_supported(int q) noexcept;
std::span<const int> supported_orders() noexcept;

/// Irreducibility over GF(p) by trial division against every monic
/// polynomial of degree 1..deg/2. Coefficients constant term first.
bool is_irreducible(std::span<const int> poly, int p);

/// Stable 64-bit digest of the pinned reduction-polynomial table; certificates
/// are only comparable between builds that report the same value.
std::uint64_t polynomial_table_hash();

} // namespace qkneser::gf
