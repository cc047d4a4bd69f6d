#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithperm/compat.hpp"
#include "arithperm/numtheory.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace arithperm;
using Labels = std::vector<std::uint64_t>;

TEST_CASE("kind names round-trip") {
    for (auto k : {CompatKind::Lcm, CompatKind::Div, CompatKind::AntiCoprime, CompatKind::Coprime})
        CHECK(parse_kind(to_string(k)) == k);
    CHECK_FALSE(parse_kind("gcd").has_value());
}

TEST_CASE("is_compatible") {
    CHECK_FALSE(is_compatible(CompatKind::Lcm, 12, 18, 30));
    for (std::uint64_t j = 1; j <= 30; ++j)
        CHECK(is_compatible(CompatKind::Lcm, j, j, 30));
    CHECK(is_compatible(CompatKind::AntiCoprime, 1, 5, 10));
    CHECK_FALSE(is_compatible(CompatKind::AntiCoprime, 5, 1, 10));
    CHECK(is_compatible(CompatKind::Div, 3, 12, 12));
    CHECK_FALSE(is_compatible(CompatKind::Div, 4, 6, 12));
    CHECK(is_compatible(CompatKind::Coprime, 4, 9, 10));
    CHECK_THROWS_AS(is_compatible(CompatKind::Lcm, 0, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(is_compatible(CompatKind::Lcm, 1, 6, 5), std::invalid_argument);
}

TEST_CASE("build_matrix small cases") {
    const auto lcm3 = build_matrix(CompatKind::Lcm, 3);
    CHECK(lcm3.row_labels(0) == Labels{1, 2, 3});
    CHECK(lcm3.row_labels(1) == Labels{1, 2});
    CHECK(lcm3.row_labels(2) == Labels{1, 3});
    CHECK(build_matrix(CompatKind::Div, 4).row_labels(2) == Labels{1, 3});
    CHECK(build_matrix(CompatKind::AntiCoprime, 4).row_labels(1) == Labels{2, 4});
    CHECK_THROWS_AS(build_matrix(CompatKind::Lcm, 0), std::invalid_argument);
}

TEST_CASE("matrices agree with the predicate and keep their structural invariants") {
    for (std::uint64_t n = 1; n <= 200; n += (n < 40 ? 1 : 7)) {
        const auto lcm = build_matrix(CompatKind::Lcm, n);
        const auto div = build_matrix(CompatKind::Div, n);
        const auto anti = build_matrix(CompatKind::AntiCoprime, n);
        CHECK(lcm.transposed().row(0) == lcm.row(0));
        for (std::uint64_t j = 1; j <= n; ++j) {
            for (std::uint64_t jp = 1; jp <= n; ++jp) {
                REQUIRE(lcm.allows(j - 1, jp - 1) == (oracle::lcm(j, jp) <= n));
                REQUIRE(lcm.allows(j - 1, jp - 1) == lcm.allows(jp - 1, j - 1));
                REQUIRE(div.allows(j - 1, jp - 1) == div.allows(jp - 1, j - 1));
            }
            REQUIRE(lcm.allows(j - 1, j - 1));
            REQUIRE(div.allows(j - 1, j - 1));
            REQUIRE(div.row(j - 1).is_subset_of(lcm.row(j - 1)));
            // N(j) <= tau(j) n / j
            REQUIRE(lcm.row(j - 1).count() * j <= nt::tau(j) * n);
            if (2 * j > n)
                REQUIRE(lcm.row_labels(j - 1) == nt::divisors(j));
        }
        REQUIRE(anti.row(0).count() == n);
        for (std::uint64_t j = 2; j <= n; ++j)
            REQUIRE_FALSE(anti.allows(j - 1, 0));
    }
}

TEST_CASE("triple decomposition") {
    CHECK(triple_decomposition(12, 18, 36) == Triple{2, 6, 3});
    CHECK(triple_decomposition(5, 5, 10) == Triple{1, 5, 1});
    CHECK_FALSE(triple_decomposition(12, 18, 30).has_value());

    for (std::uint64_t n = 1; n <= 200; n += 13) {
        for (std::uint64_t j = 1; j <= n; ++j) {
            for (std::uint64_t jp = 1; jp <= n; ++jp) {
                const auto t = triple_decomposition(j, jp, n);
                REQUIRE(t.has_value() == is_compatible(CompatKind::Lcm, j, jp, n));
                if (t) {
                    REQUIRE(t->a * t->b == j);
                    REQUIRE(t->b * t->c == jp);
                    REQUIRE(std::gcd(t->a, t->c) == 1);
                    REQUIRE(t->a * t->b * t->c <= n);
                }
            }
        }
    }
}

namespace {

std::uint64_t nk_by_scan(std::uint64_t j, std::uint64_t k, std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t jp = n / k + 1; jp <= n; ++jp)
        c += oracle::lcm(j, jp) <= n ? 1 : 0;
    return c;
}

} // namespace

TEST_CASE("neighbor_count_Nk") {
    CHECK(neighbor_count_Nk(11, 3, 30) == 2);
    CHECK(neighbor_count_Nk(29, 3, 30) == 1);
    CHECK(neighbor_count_Nk(24, 3, 30) == 2);
    CHECK_THROWS_AS(neighbor_count_Nk(10, 3, 30), std::invalid_argument);
    CHECK_THROWS_AS(neighbor_count_Nk(31, 3, 30), std::invalid_argument);

    for (std::uint64_t k : {2, 3, 5, 30}) {
        for (std::uint64_t n : {30, 97, 500}) {
            const auto bulk = neighbor_counts_top(k, n);
            REQUIRE(bulk.size() == n - n / k);
            for (std::uint64_t j = n / k + 1; j <= n; ++j) {
                const auto expected = nk_by_scan(j, k, n);
                REQUIRE(neighbor_count_Nk(j, k, n) == expected);
                REQUIRE(bulk[j - n / k - 1] == expected);
            }
        }
    }
}

TEST_CASE("N_k(j) = 1 exactly when j > n/2 has no prime p with j/p > n/k") {
    const std::uint64_t n = 1'000'000;
    const std::uint64_t k = 30;
    const auto counts = neighbor_counts_top(k, n);
    const auto small = nt::primes_below(k);
    std::uint64_t ones = 0;
    for (std::uint64_t j = n / k + 1; j <= n; ++j) {
        const bool rough = std::none_of(small.begin(), small.end(), [&](auto p) { return j % p == 0 && k * j > p * n; });
        const bool is_one = counts[j - n / k - 1] == 1;
        REQUIRE(is_one == (2 * j > n && rough));
        ones += is_one ? 1 : 0;
    }
    const double predicted = 0.5 * static_cast<double>(nt::mertens_product(k));
    CHECK(static_cast<double>(ones) / n == doctest::Approx(predicted).epsilon(0.02));
}
