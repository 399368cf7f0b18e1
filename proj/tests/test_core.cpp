#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "hurdle/bitstring.hpp"
#include "hurdle/rng.hpp"

using namespace hurdle;

TEST_CASE("flip is a single-position involution", "[core]") {
    Bitstring x = Bitstring::from_string("0000");
    x.flip(1);
    CHECK(x.to_string() == "1000");
    Bitstring y = Bitstring::from_string("1111");
    y.flip(4);
    CHECK(y.to_string() == "1110");

    RandomStream rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Bitstring z = random_bitstring(19, rng);
        const Bitstring before = z;
        const std::size_t i = 1 + rng.uniform_index(19);
        z.flip(i);
        CHECK(hamming_distance(before, z) == 1);
        z.flip(i);
        CHECK(z == before);
    }
    CHECK_THROWS_AS(x.flip(0), std::out_of_range);
    CHECK_THROWS_AS(x.flip(5), std::out_of_range);
}

TEST_CASE("count_zeros basics and complement identity", "[core]") {
    CHECK(Bitstring::from_string("1111").count_zeros() == 0);
    CHECK(Bitstring::from_string("00000").count_zeros() == 5);
    CHECK(Bitstring::from_string("0101").count_zeros() == 2);

    RandomStream rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(130);
        Bitstring x = random_bitstring(n, rng);
        Bitstring comp = x;
        for (std::size_t i = 1; i <= n; ++i) comp.flip(i);
        CHECK(x.count_zeros() + comp.count_zeros() == n);
        CHECK(x.count_zeros() + x.count_ones() == n);
    }
}

TEST_CASE("standard bit mutation edge probabilities", "[core]") {
    RandomStream rng(3);
    const Bitstring x = Bitstring::from_string("0110100111");
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(standard_bit_mutation(x, 0.0, rng) == x);
        Bitstring comp = standard_bit_mutation(x, 1.0, rng);
        CHECK(hamming_distance(x, comp) == x.size());
    }
}

TEST_CASE("mutation identity frequency matches (1-p)^n", "[core]") {
    // n = 3, p = 1/3: P(output == input) = (2/3)^3 = 8/27.
    const double p0 = 8.0 / 27.0;
    const int reps = 100000;
    RandomStream rng(2024);
    const Bitstring x = Bitstring::from_string("010");
    int identical = 0;
    for (int r = 0; r < reps; ++r)
        if (standard_bit_mutation(x, 1.0 / 3.0, rng) == x) ++identical;
    const double freq = static_cast<double>(identical) / reps;
    const double se = std::sqrt(p0 * (1 - p0) / reps);
    CHECK(std::fabs(freq - p0) < 3 * se);
}

TEST_CASE("mutation flip count is Binomial(n, p)", "[core]") {
    const std::size_t n = 8;
    const double p = 0.3;
    const int reps = 100000;
    RandomStream rng(4242);
    const Bitstring x = Bitstring::from_string("10110001");
    std::vector<int> counts(n + 1, 0);
    for (int r = 0; r < reps; ++r)
        ++counts[hamming_distance(x, standard_bit_mutation(x, p, rng))];
    for (std::size_t k = 0; k <= n; ++k) {
        double mass = 1;
        for (std::size_t i = 0; i < k; ++i) mass *= p * static_cast<double>(n - i) / static_cast<double>(i + 1);
        for (std::size_t i = 0; i < n - k; ++i) mass *= 1 - p;
        const double freq = static_cast<double>(counts[k]) / reps;
        const double se = std::sqrt(mass * (1 - mass) / reps);
        INFO("k=" << k);
        CHECK(std::fabs(freq - mass) < 3 * se + 1e-12);
    }
}

TEST_CASE("random permutations are uniform (chi-square at 1e-6)", "[core]") {
    RandomStream rng(99);
    CHECK(random_permutation(1, rng) == std::vector<std::size_t>{1});

    // bijection property
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(40);
        auto perm = random_permutation(n, rng);
        std::sort(perm.begin(), perm.end());
        for (std::size_t i = 0; i < n; ++i) CHECK(perm[i] == i + 1);
    }

    // n = 3: 6 cells, 6e4 samples; chi2(5 dof) quantile at 1-1e-6 is 35.888
    const int reps = 60000;
    std::map<int, int> counts;
    for (int r = 0; r < reps; ++r) {
        const auto perm = random_permutation(3, rng);
        counts[static_cast<int>(perm[0] * 100 + perm[1] * 10 + perm[2])]++;
    }
    REQUIRE(counts.size() == 6);
    const double expected = reps / 6.0;
    double chi2 = 0;
    for (const auto& [k, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 35.8882);
}

TEST_CASE("uniform_index is in range and close to uniform", "[core]") {
    RandomStream rng(5);
    const std::uint64_t bound = 7;
    const int reps = 70000;
    std::vector<int> counts(bound, 0);
    for (int r = 0; r < reps; ++r) {
        const std::uint64_t v = rng.uniform_index(bound);
        REQUIRE(v < bound);
        ++counts[v];
    }
    const double p = 1.0 / static_cast<double>(bound);
    const double se = std::sqrt(p * (1 - p) / reps);
    for (std::uint64_t v = 0; v < bound; ++v)
        CHECK(std::fabs(counts[v] / static_cast<double>(reps) - p) < 4 * se);
    CHECK(rng.uniform_index(1) == 0);
}

TEST_CASE("identical seeds give identical streams", "[core]") {
    RandomStream a(123456789), b(123456789);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

    RandomStream c(77), d(77);
    const Bitstring x = Bitstring::from_string("1100101");
    for (int i = 0; i < 100; ++i)
        REQUIRE(standard_bit_mutation(x, 0.25, c) == standard_bit_mutation(x, 0.25, d));
}

TEST_CASE("stream seed derivation is injective in practice", "[core]") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 10000; ++k) seen.insert(derive_stream_seed(123, k));
    CHECK(seen.size() == 10000);
    CHECK(derive_stream_seed(1, 0) != derive_stream_seed(2, 0));
    CHECK(derive_stream_seed(1, 0) != derive_stream_seed(1, 1));
    // splitmix64 finalizer is a bijection, so distinct inputs cannot collide
    CHECK(splitmix64_mix(0) != splitmix64_mix(1));
}

TEST_CASE("uniform_double stays in [0,1) and bernoulli respects edges", "[core]") {
    RandomStream rng(8);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(rng.bernoulli(0.0));
        CHECK(rng.bernoulli(1.0));
    }
}

TEST_CASE("bitstring parsing and bounds are strict", "[core]") {
    CHECK_THROWS_AS(Bitstring::from_string("01x1"), std::invalid_argument);
    CHECK_THROWS_AS(Bitstring(0), std::invalid_argument);
    const Bitstring x = Bitstring::from_string("10");
    CHECK_THROWS_AS(x.get(3), std::out_of_range);
    CHECK_THROWS_AS(hamming_distance(x, Bitstring::from_string("100")), std::invalid_argument);
}
