#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithperm/numtheory.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace arithperm;

TEST_CASE("spf table") {
    const auto t = nt::build_spf(10);
    CHECK(t.spf(9) == 3);
    CHECK(t.spf(7) == 7);
    CHECK(t.spf(6) == 2);
    CHECK_THROWS_AS(nt::build_spf(1), std::invalid_argument);
    CHECK_THROWS_AS(t.spf(11), std::out_of_range);

    const auto big = nt::build_spf(5000);
    for (std::uint32_t m = 2; m <= 5000; ++m) {
        const auto p = big.spf(m);
        REQUIRE(m % p == 0);
        REQUIRE(oracle::is_prime_trial(p));
        REQUIRE((p == m) == oracle::is_prime_trial(m));
    }
}

TEST_CASE("factorize") {
    using PP = nt::PrimePower;
    CHECK(nt::factorize(12) == nt::Factorization{PP{2, 2}, PP{3, 1}});
    CHECK(nt::factorize(1).empty());
    CHECK(nt::factorize(480) == nt::Factorization{PP{2, 5}, PP{3, 1}, PP{5, 1}});

    const auto small = nt::build_spf(100);
    CHECK_THROWS_AS(nt::factorize(101, small), std::out_of_range);
    CHECK_THROWS_AS(nt::factorize(0, small), std::invalid_argument);

    for (std::uint64_t m = 1; m <= 10'000; ++m) {
        const auto f = nt::factorize(m);
        REQUIRE(nt::reconstruct(f) == m);
        for (std::size_t i = 1; i < f.size(); ++i)
            REQUIRE(f[i - 1].prime < f[i].prime);
    }
}

TEST_CASE("divisors and divisor functions") {
    CHECK(nt::divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(nt::divisors(1) == std::vector<std::uint64_t>{1});
    CHECK(nt::divisors(480).size() == oracle::divisors_by_scan(480).size());
    CHECK(nt::divisors(480).size() == 24);

    CHECK(nt::tau(6) == 4);
    CHECK(nt::sigma(6) == 12);
    CHECK(nt::phi(6) == 2);
    CHECK(nt::phi(1) == 1);
    CHECK(nt::tau(480) == 24);

    for (std::uint64_t m = 1; m <= 2000; ++m) {
        const auto ds = nt::divisors(m);
        REQUIRE(ds == oracle::divisors_by_scan(m));
        REQUIRE(ds.size() == nt::tau(m));
        REQUIRE(std::accumulate(ds.begin(), ds.end(), std::uint64_t{0}) == nt::sigma(m));
        std::uint64_t coprime = 0;
        for (std::uint64_t j = 1; j <= m; ++j)
            coprime += std::gcd(j, m) == 1 ? 1 : 0;
        REQUIRE(nt::phi(m) == coprime);
    }
}

TEST_CASE("valuation") {
    CHECK(nt::valuation(12, 2) == 2);
    CHECK(nt::valuation(6, 2) == 1);
    CHECK(nt::valuation(7, 2) == 0);
    CHECK_THROWS_AS(nt::valuation(0, 2), std::invalid_argument);
}

TEST_CASE("alpha is b/sigma(b) and dominates phi(b)/b") {
    CHECK(nt::alpha(1) == nt::Rational(1));
    CHECK(nt::alpha(4) == nt::Rational(4, 7));
    CHECK(nt::alpha(12) == nt::Rational(3, 7));
    for (std::uint64_t b = 1; b <= 10'000; ++b) {
        const auto a = nt::alpha(b);
        REQUIRE(a == nt::Rational(static_cast<std::int64_t>(b), static_cast<std::int64_t>(nt::sigma(b))));
        REQUIRE(a >= nt::phi_ratio(b));
    }
}

TEST_CASE("alpha matches the density of admissible integers") {
    // density of j with v_p(j) = 0 mod (v_p(b)+1) for p | b, counted directly
    for (std::uint64_t b : {2, 4, 6, 12}) {
        const std::uint64_t limit = 1'000'000;
        std::uint64_t hits = 0;
        const auto f = nt::factorize(b);
        for (std::uint64_t j = 1; j <= limit; ++j) {
            bool ok = true;
            for (const auto& [p, e] : f)
                ok = ok && nt::valuation(j, p) % (e + 1) == 0;
            hits += ok ? 1 : 0;
        }
        const auto a = nt::alpha(b);
        const double expected = static_cast<double>(a.numerator()) / static_cast<double>(a.denominator());
        CHECK(static_cast<double>(hits) / limit == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("tau_below") {
    CHECK(nt::tau_below(12, 4) == 3);
    CHECK(nt::tau_below(12, 13) == 6);
    CHECK(nt::tau_below(7, 1) == 0);
}

TEST_CASE("tau_below summation identity") {
    for (std::uint64_t z = 1; z <= 50; ++z) {
        std::uint64_t lhs = 0;
        for (std::uint64_t x = 1; x <= 1000; ++x) {
            lhs += nt::tau_below(x, static_cast<double>(z));
            std::uint64_t rhs = 0;
            for (std::uint64_t d = 1; d < z; ++d)
                rhs += x / d;
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("mertens product") {
    CHECK(static_cast<double>(nt::mertens_product(3)) == doctest::Approx(0.5));
    CHECK(static_cast<double>(nt::mertens_product(30)) == doctest::Approx(oracle::mertens_direct(30)).epsilon(1e-12));
    CHECK(static_cast<double>(nt::mertens_product(30)) == doctest::Approx(0.157947).epsilon(1e-6));
    CHECK(static_cast<double>(nt::mertens_product(10'000)) ==
          doctest::Approx(oracle::mertens_direct(10'000)).epsilon(1e-10));
    CHECK(nt::mertens_product(10'000) / 42 > 14.0L / 10'000);
    CHECK_THROWS_AS(nt::mertens_product(1), std::invalid_argument);
}

TEST_CASE("primes below") {
    CHECK(nt::primes_below(2).empty());
    CHECK(nt::primes_below(12) == std::vector<std::uint32_t>{2, 3, 5, 7, 11});
    CHECK(nt::primes_below(10'000).size() == 1229);
}

TEST_CASE("lcm saturates instead of overflowing") {
    CHECK(nt::lcm_saturating(12, 18) == 36);
    CHECK(nt::lcm_saturating(1'000'000, 999'999) == 999'999'000'000ULL);
    CHECK(nt::lcm_saturating(~0ULL, ~0ULL - 1) == ~0ULL);
}
