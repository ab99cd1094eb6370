#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "rsaware/synthtask.hpp"

using namespace rsaware;

namespace {

Program prog(const char* text, int k) { return Program::from_formula(Formula::parse(text, k)); }

}  // namespace

TEST_CASE("every sample carries its exact program label") {
    const SceneSpec spec;
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const auto data = generate_dataset(spec, x, Support::full(2), 500, 101);
    REQUIRE(data.size() == 500);
    for (const Sample& s : data) {
        CHECK(s.y == x.label_of(s.g));
        CHECK(s.x.size() == static_cast<std::size_t>(spec.input_dim()));
    }
}

TEST_CASE("noiseless rendering inverts exactly") {
    SceneSpec spec;
    spec.noise_sigma = 0.0;
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    for (std::uint64_t seed : {7u, 8u, 9u})
        for (const Sample& s : generate_dataset(spec, x, Support::full(2), 400, seed))
            CHECK(oracle_invert(spec, s.x) == s.g);
}

TEST_CASE("low-noise rendering recovers nearly all bits") {
    SceneSpec spec;
    spec.noise_sigma = spec.separation / 20.0;
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const auto data = generate_dataset(spec, x, Support::full(2), 10000, 102);
    std::size_t bit_hits = 0;
    for (const Sample& s : data) {
        const Concept dec = oracle_invert(spec, s.x);
        bit_hits += static_cast<std::size_t>(spec.k - dec.hamming(s.g));
    }
    CHECK(static_cast<double>(bit_hits) / (10000.0 * spec.k) >= 0.999);
}

TEST_CASE("generation is deterministic per seed") {
    const SceneSpec spec;
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const auto a = generate_dataset(spec, x, Support::full(2), 50, 103);
    const auto b = generate_dataset(spec, x, Support::full(2), 50, 103);
    const auto c = generate_dataset(spec, x, Support::full(2), 50, 104);
    REQUIRE(a.size() == b.size());
    bool same = true, differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same = same && a[i].x == b[i].x && a[i].g == b[i].g && a[i].y == b[i].y;
        differs = differs || a[i].x != c[i].x;
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("labels balance as the support dictates") {
    const SceneSpec spec;
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const auto data = generate_dataset(spec, x, Support::full(2), 1000, 105);
    int ones = 0;
    for (const Sample& s : data) ones += s.y;
    // binomial 3 sigma around 500
    CHECK(std::abs(ones - 500) <= 3.0 * std::sqrt(1000 * 0.25));
}

TEST_CASE("concept frequencies track support weights") {
    const SceneSpec spec;
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    const Support s(ConceptSet::full(2), w);
    const auto data = generate_dataset(spec, x, s, 10000, 106);
    std::vector<double> counts(4, 0.0);
    for (const Sample& smp : data) counts[smp.g.index()] += 1.0;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double expected = 10000.0 * w[i];
        chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    CHECK(chi2 < 16.27);  // chi-square df=3 critical value at alpha = 0.001
}

TEST_CASE("block-mean ties decode to bit zero") {
    const SceneSpec spec;
    CHECK(oracle_invert(spec, std::vector<double>(spec.input_dim(), 0.0)) == Concept(2, 0));
}

TEST_CASE("splits are disjoint by index") {
    const SceneSpec spec;
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const auto data = generate_dataset(spec, x, Support::full(2), 100, 107);
    const auto [train, test] = split_dataset(data, 60, 40);
    CHECK(train.size() == 60);
    CHECK(test.size() == 40);
    CHECK(train.back().x == data[59].x);
    CHECK(test.front().x == data[60].x);
    CHECK_THROWS_AS(split_dataset(data, 80, 40), std::invalid_argument);
}

TEST_CASE("csv round trip preserves the dataset") {
    SceneSpec spec;
    spec.k = 3;
    spec.pixels_per_bit = 4;
    const Program p = prog("c1 -> c2 -> c3", 3);
    const auto data = generate_dataset(spec, p, Support::full(3), 25, 108);
    const std::string path = "synthtask_roundtrip.csv";
    write_dataset_csv(path, spec, data);
    const auto [spec2, data2] = read_dataset_csv(path);
    CHECK(spec2.k == spec.k);
    CHECK(spec2.pixels_per_bit == spec.pixels_per_bit);
    CHECK(spec2.noise_sigma == spec.noise_sigma);
    REQUIRE(data2.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(data2[i].x == data[i].x);
        CHECK(data2[i].g == data[i].g);
        CHECK(data2[i].y == data[i].y);
    }
    std::remove(path.c_str());
    std::remove((path + ".spec.json").c_str());
}

TEST_CASE("scene validation") {
    SceneSpec bad;
    bad.separation = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SceneSpec{};
    bad.noise_sigma = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    CHECK_THROWS_AS(generate_dataset(SceneSpec{}, prog("c1", 3), Support::full(3), 5, 1),
                    std::invalid_argument);
}
