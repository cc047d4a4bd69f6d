#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithperm/permanent.hpp"
#include "oracles.hpp"

#include <random>

using namespace arithperm;

namespace {

constexpr CompatKind kAllKinds[] = {CompatKind::Lcm, CompatKind::Div, CompatKind::AntiCoprime, CompatKind::Coprime};

std::uint64_t oracle_count(CompatKind kind, std::uint64_t n) {
    return oracle::permanent_by_enumeration(oracle::iota_labels(n), [kind, n](std::uint64_t j, std::uint64_t jp) {
        switch (kind) {
        case CompatKind::Lcm: return oracle::lcm(j, jp) <= n;
        case CompatKind::Div: return j % jp == 0 || jp % j == 0;
        case CompatKind::AntiCoprime: return j == 1 || std::gcd(j, jp) > 1;
        case CompatKind::Coprime: return std::gcd(j, jp) == 1;
        }
        return false;
    });
}

CompatMatrix random_matrix(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<std::vector<bool>> cells(n, std::vector<bool>(n));
    for (auto& row : cells)
        for (std::size_t q = 0; q < n; ++q)
            row[q] = coin(rng);
    return CompatMatrix::from_relation(oracle::iota_labels(n),
                                       [&](std::uint64_t j, std::uint64_t jp) { return static_cast<bool>(cells[j - 1][jp - 1]); });
}

} // namespace

TEST_CASE("known counts") {
    CHECK(count_permutations(CompatKind::Lcm, 3).count == 3);
    CHECK(count_permutations(CompatKind::Div, 6).count == 36);
    CHECK(count_permutations(CompatKind::AntiCoprime, 4).count == 2);
    CHECK(count_permutations(CompatKind::Lcm, 6).count == 56);
    CHECK(count_permutations(CompatKind::Div, 12).count == 4010);
    CHECK(count_permutations(CompatKind::Lcm, 12).count == 12192);
    CHECK(count_permutations(CompatKind::Lcm, 20).count == 14433408);
    CHECK(count_permutations(CompatKind::Div, 1).count == 1);

    const auto lcm10 = count_permutations(CompatKind::Lcm, 10);
    CHECK(lcm10.count == 1184);
    CHECK(lcm10.nth_root == doctest::Approx(2.0292).epsilon(1e-9));
}

TEST_CASE("auto engine selection") {
    CHECK(count_permutations(CompatKind::Lcm, 10).engine == Engine::BruteForce);
    CHECK(count_permutations(CompatKind::Lcm, 11).engine == Engine::Ryser);
    CHECK(count_permutations(CompatKind::Lcm, 8, Engine::Ryser).engine == Engine::Ryser);
}

TEST_CASE("engines agree with exhaustive enumeration for every kind") {
    for (auto kind : kAllKinds) {
        for (std::size_t n = 1; n <= 9; ++n) {
            const auto expected = oracle_count(kind, n);
            const auto m = build_matrix(kind, n);
            CAPTURE(to_string(kind));
            CAPTURE(n);
            REQUIRE(permanent_bruteforce(m) == expected);
            REQUIRE(permanent_ryser(m) == expected);
            REQUIRE(permanent_ryser(m, {.reduce = false}) == expected);
        }
    }
}

TEST_CASE("brute force and Ryser agree up to the brute-force limit") {
    for (auto kind : kAllKinds) {
        for (std::size_t n = 10; n <= kBruteForceMaxN; ++n) {
            const auto m = build_matrix(kind, n);
            REQUIRE(permanent_bruteforce(m) == permanent_ryser(m));
        }
    }
}

TEST_CASE("random matrices: reduction, chunking and threads do not change the result") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 11;
        const double density = 0.15 + 0.1 * (trial % 7);
        const auto m = random_matrix(n, density, rng);
        const auto expected = permanent_bruteforce(m);
        REQUIRE(permanent_ryser(m) == expected);
        REQUIRE(permanent_ryser(m, {.reduce = false}) == expected);
        REQUIRE(permanent_ryser(m, {.threads = 3, .chunks = 7, .reduce = false}) == expected);
        REQUIRE(permanent_ryser(m, {.threads = 2, .chunks = 5}) == expected);
    }
}

TEST_CASE("partition invariance on a mid-size matrix") {
    const auto m = build_matrix(CompatKind::Lcm, 22);
    const auto reference = permanent_ryser(m, {.threads = 1, .chunks = 1, .reduce = false});
    for (unsigned threads : {1u, 2u, 4u})
        for (std::size_t chunks : {1u, 3u, 16u, 64u})
            REQUIRE(permanent_ryser(m, {.threads = threads, .chunks = chunks, .reduce = false}) == reference);
    CHECK(permanent_ryser(m) == reference);
}

TEST_CASE("ryser_partial_sum splits add up") {
    const auto m = build_matrix(CompatKind::Div, 12);
    const std::uint64_t total = std::uint64_t{1} << 12;
    const BigCount whole = ryser_partial_sum(m, 0, total);
    CHECK(whole == 4010);  // (-1)^12 = 1
    BigCount pieces = 0;
    for (std::uint64_t lo = 0; lo < total; lo += 777)
        pieces += ryser_partial_sum(m, lo, std::min(total, lo + 777));
    CHECK(pieces == whole);

    const auto odd = build_matrix(CompatKind::Lcm, 5);
    CHECK(-ryser_partial_sum(odd, 0, 32) == count_permutations(CompatKind::Lcm, 5).count);
}

TEST_CASE("engine ceilings") {
    CHECK_THROWS_AS(permanent_bruteforce(build_matrix(CompatKind::Div, 13)), ResourceError);
    CHECK_THROWS_AS(count_permutations(CompatKind::Div, 13, Engine::BruteForce), ResourceError);
    CHECK_THROWS_AS(permanent_ryser(build_matrix(CompatKind::Div, 15), {.max_n = 14}), ResourceError);
    CHECK_THROWS_AS(count_permutations(CompatKind::Div, 36), ResourceError);
}

TEST_CASE("structural properties") {
    for (std::size_t n = 1; n <= 22; ++n) {
        const auto div = count_permutations(CompatKind::Div, n).count;
        const auto lcm = count_permutations(CompatKind::Lcm, n).count;
        REQUIRE(div <= lcm);
        REQUIRE(div >= 1);
    }
    for (auto kind : kAllKinds)
        CHECK(count_permutations(kind, 1).count == 1);
}

TEST_CASE("anti-coprime count equals the permanent of the 2..n block") {
    // Row 1 is full but column 1 only admits 1, so pi(1) = 1.
    for (std::size_t n = 2; n <= 9; ++n) {
        std::vector<std::uint64_t> labels;
        for (std::uint64_t j = 2; j <= n; ++j)
            labels.push_back(j);
        const auto sub = oracle::permanent_by_enumeration(labels, [](auto j, auto jp) { return std::gcd(j, jp) > 1; });
        REQUIRE(count_permutations(CompatKind::AntiCoprime, n).count == sub);
    }
}

TEST_CASE("nth root rounding") {
    CHECK(nth_root_4dp(36, 6) == doctest::Approx(1.8171));
    CHECK(nth_root_4dp(1, 1) == doctest::Approx(1.0));
    CHECK(nth_root_4dp(BigCount("368759752"), 27) == doctest::Approx(2.0763));
}

TEST_CASE("table1 rows") {
    const auto rows = table1(12);
    REQUIRE(rows.size() == 12);
    CHECK(rows.back().n == 12);
    CHECK(rows.back().div.count == 4010);
    CHECK(rows.back().lcm.count == 12192);
    CHECK(rows.back().lcm.nth_root == doctest::Approx(2.1903));
}
