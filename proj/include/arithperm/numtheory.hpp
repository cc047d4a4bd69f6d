#pragma once
// Elementary number theory kernel: smallest-prime-factor sieve, factorization,
// divisor and multiplicative functions, Mertens products.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

namespace arithperm::nt {

using Rational = boost::rational<std::int64_t>;

inline constexpr std::uint32_t kDefaultSieveLimit = 1'000'001;

/// Smallest-prime-factor table for 2 <= m <= limit. Immutable once built.
class SpfTable {
public:
    explicit SpfTable(std::uint32_t limit);

    std::uint32_t limit() const noexcept { return limit_; }
    std::uint32_t spf(std::uint32_t m) const;
    bool is_prime(std::uint32_t m) const { return m >= 2 && spf(m) == m; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

SpfTable build_spf(std::uint32_t limit);

/// Process-wide table up to kDefaultSieveLimit, built on first use.
const SpfTable& default_table();

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime powers in strictly increasing order of prime; empty for m = 1.
using Factorization = std::vector<PrimePower>;

Factorization factorize(std::uint64_t m, const SpfTable& table);
Factorization factorize(std::uint64_t m);

std::uint64_t reconstruct(const Factorization& f);

/// Exponent of p in m (m >= 1, p >= 2).
std::uint32_t valuation(std::uint64_t m, std::uint64_t p);

std::vector<std::uint64_t> divisors(std::uint64_t m, const SpfTable& table);
std::vector<std::uint64_t> divisors(std::uint64_t m);

std::uint64_t tau(std::uint64_t m);
std::uint64_t sigma(std::uint64_t m);
std::uint64_t phi(std::uint64_t m);

/// Multiplicative density of j with v_p(j) = 0 mod (v_p(b)+1) for all p | b.
/// Built from prime-power factors (p^{i+1} - p^i) / (p^{i+1} - 1); equals b/sigma(b).
Rational alpha(std::uint64_t b);

/// phi(b)/b as an exact rational.
Rational phi_ratio(std::uint64_t b);

/// Number of divisors of m strictly below z.
std::uint64_t tau_below(std::uint64_t m, double z);

/// Product over primes p < x of (1 - 1/p), accumulated as a compensated
/// sum of log1p terms in extended precision.
long double mertens_product(std::uint32_t x);

std::vector<std::uint32_t> primes_below(std::uint32_t x);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// lcm through a 128-bit intermediate; saturates at UINT64_MAX.
std::uint64_t lcm_saturating(std::uint64_t a, std::uint64_t b) noexcept;

} // namespace arithperm::nt
