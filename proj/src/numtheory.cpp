#include "arithperm/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arithperm::nt {

SpfTable::SpfTable(std::uint32_t limit) : limit_(limit) {
    if (limit < 2)
        throw std::invalid_argument("sieve limit must be at least 2, got " + std::to_string(limit));
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    // linear sieve: every composite is crossed off exactly once, by its smallest prime
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            const std::uint64_t m = std::uint64_t{p} * i;
            if (p > spf_[i] || m > limit)
                break;
            spf_[m] = p;
        }
    }
}

std::uint32_t SpfTable::spf(std::uint32_t m) const {
    if (m < 2 || m > limit_)
        throw std::out_of_range("spf(" + std::to_string(m) + ") outside [2, " + std::to_string(limit_) + "]");
    return spf_[m];
}

SpfTable build_spf(std::uint32_t limit) { return SpfTable(limit); }

const SpfTable& default_table() {
    static const SpfTable table(kDefaultSieveLimit);
    return table;
}

Factorization factorize(std::uint64_t m, const SpfTable& table) {
    if (m == 0)
        throw std::invalid_argument("factorize: m must be positive");
    if (m > table.limit())
        throw std::out_of_range("factorize: " + std::to_string(m) + " exceeds sieve limit " +
                                std::to_string(table.limit()));
    Factorization f;
    auto r = static_cast<std::uint32_t>(m);
    while (r > 1) {
        const std::uint32_t p = table.spf(r);
        std::uint32_t e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    return f;
}

Factorization factorize(std::uint64_t m) { return factorize(m, default_table()); }

std::uint64_t reconstruct(const Factorization& f) {
    std::uint64_t m = 1;
    for (const auto& [p, e] : f)
        for (std::uint32_t i = 0; i < e; ++i)
            m *= p;
    return m;
}

std::uint32_t valuation(std::uint64_t m, std::uint64_t p) {
    if (m == 0 || p < 2)
        throw std::invalid_argument("valuation: need m >= 1 and p >= 2");
    std::uint32_t e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

namespace {

std::vector<std::uint64_t> divisors_of(const Factorization& f) {
    std::vector<std::uint64_t> out{1};
    for (const auto& [p, e] : f) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t ipow(std::uint64_t p, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= p;
    return r;
}

} // namespace

std::vector<std::uint64_t> divisors(std::uint64_t m, const SpfTable& table) {
    return divisors_of(factorize(m, table));
}

std::vector<std::uint64_t> divisors(std::uint64_t m) { return divisors(m, default_table()); }

std::uint64_t tau(std::uint64_t m) {
    std::uint64_t t = 1;
    for (const auto& pp : factorize(m))
        t *= pp.exponent + 1;
    return t;
}

std::uint64_t sigma(std::uint64_t m) {
    std::uint64_t s = 1;
    for (const auto& [p, e] : factorize(m))
        s *= (ipow(p, e + 1) - 1) / (p - 1);
    return s;
}

std::uint64_t phi(std::uint64_t m) {
    std::uint64_t r = 1;
    for (const auto& [p, e] : factorize(m))
        r *= ipow(p, e - 1) * (p - 1);
    return r;
}

Rational alpha(std::uint64_t b) {
    Rational r{1};
    for (const auto& [p, e] : factorize(b)) {
        const auto hi = static_cast<std::int64_t>(ipow(p, e + 1));
        const auto lo = static_cast<std::int64_t>(ipow(p, e));
        r *= Rational(hi - lo, hi - 1);
    }
    return r;
}

Rational phi_ratio(std::uint64_t b) {
    return Rational(static_cast<std::int64_t>(phi(b)), static_cast<std::int64_t>(b));
}

std::uint64_t tau_below(std::uint64_t m, double z) {
    const auto ds = divisors(m);
    return static_cast<std::uint64_t>(
        std::count_if(ds.begin(), ds.end(), [z](std::uint64_t d) { return static_cast<double>(d) < z; }));
}

std::vector<std::uint32_t> primes_below(std::uint32_t x) {
    if (x <= 2)
        return {};
    auto collect = [x](const SpfTable& table) {
        const auto ps = table.primes();
        return std::vector<std::uint32_t>(ps.begin(), std::lower_bound(ps.begin(), ps.end(), x));
    };
    if (x <= default_table().limit())
        return collect(default_table());
    return collect(SpfTable(x));
}

long double mertens_product(std::uint32_t x) {
    if (x < 2)
        throw std::invalid_argument("mertens_product: x must be at least 2");
    long double sum = 0.0L;
    long double comp = 0.0L;
    for (std::uint32_t p : primes_below(x)) {
        const long double term = std::log1p(-1.0L / static_cast<long double>(p)) - comp;
        const long double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return std::exp(sum);
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept { return std::gcd(a, b); }

std::uint64_t lcm_saturating(std::uint64_t a, std::uint64_t b) noexcept {
    if (a == 0 || b == 0)
        return 0;
    const unsigned __int128 l = static_cast<unsigned __int128>(a / std::gcd(a, b)) * b;
    if (l > std::numeric_limits<std::uint64_t>::max())
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(l);
}

} // namespace arithperm::nt
