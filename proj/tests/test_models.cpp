#include <cmath>

#include "doctest.h"
#include "rsaware/models.hpp"
#include "rsaware/rng.hpp"

using namespace rsaware;

namespace {

Program prog(const char* text, int k) { return Program::from_formula(Formula::parse(text, k)); }

const std::vector<ModelKind> kKinds{ModelKind::Independent, ModelKind::Joint,
                                    ModelKind::Autoregressive};

std::vector<double> random_raw(ModelKind kind, int k, Rng& rng) {
    std::vector<double> raw(raw_param_count(kind, k));
    for (double& x : raw) x = rng.uniform(-2.0, 2.0);
    return raw;
}

double finite_diff(ModelKind kind, int k, std::vector<double> raw, const Program& p, int y,
                   bool semantic, std::size_t i) {
    const double h = 1e-5;
    raw[i] += h;
    const double up = semantic ? semantic_nll(kind, k, raw, p, y).value
                               : uniform_kl(kind, k, raw, p, y).value;
    raw[i] -= 2 * h;
    const double dn = semantic ? semantic_nll(kind, k, raw, p, y).value
                               : uniform_kl(kind, k, raw, p, y).value;
    return (up - dn) / (2 * h);
}

}  // namespace

TEST_CASE("joint tables for the three heads") {
    const Distribution unif = joint_table(ModelKind::Independent, 2, {0.0, 0.0});
    for (std::size_t w = 0; w < 4; ++w) CHECK(unif.prob(w) == doctest::Approx(0.25));

    // mu = (~1, 0.3): mass pi on (1,1) and 1-pi on (1,0)
    const Distribution ex4 = joint_table(ModelKind::Independent, 2, {40.0, logit(0.3)});
    CHECK(ex4.prob(3) == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(ex4.prob(2) == doctest::Approx(0.7).epsilon(1e-5));
    CHECK(ex4.prob(0) == doctest::Approx(0.0).epsilon(1e-5));

    // p(c1)=0.5, p(c2|c1=0)=1, p(c2|c1=1)=0: the XOR-aware distribution
    const Distribution ar = joint_table(ModelKind::Autoregressive, 2, {0.0, 40.0, -40.0});
    CHECK(ar.prob(1) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(ar.prob(2) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(ar.prob(0) + ar.prob(3) == doctest::Approx(0.0).epsilon(1e-9));

    SUBCASE("tables sum to one for random raw params") {
        Rng rng(51);
        for (int k : {2, 3}) {
            for (ModelKind kind : kKinds) {
                for (int t = 0; t < 25; ++t) {
                    const Distribution d = joint_table(kind, k, random_raw(kind, k, rng));
                    double sum = 0.0;
                    for (std::size_t w = 0; w < d.size(); ++w) sum += d.prob(w);
                    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
                }
            }
        }
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(joint_table(ModelKind::Independent, 2, {0.0}), std::invalid_argument);
        CHECK_THROWS_AS(joint_table(ModelKind::Joint, 2, {0.0, 0.0, 0.0, 1.0 / 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("label posterior sums consistent-set mass") {
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const auto unif = label_posterior(joint_table(ModelKind::Independent, 2, {0.0, 0.0}), x);
    CHECK(unif[0] == doctest::Approx(0.5));
    CHECK(unif[1] == doctest::Approx(0.5));

    const auto pm = label_posterior(Distribution::point_mass(Concept(2, 1), Backing::Dense), x);
    CHECK(pm[0] == 0.0);
    CHECK(pm[1] == 1.0);

    const auto d = label_posterior(Distribution::dense(2, {0.25, 0.0, 0.0, 0.75}), x);
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(0.0));
}

TEST_CASE("semantic loss values on the worked examples") {
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    CHECK(semantic_nll(ModelKind::Independent, 2, {0.0, 0.0}, x, 1).value ==
          doctest::Approx(0.6931).epsilon(1e-4));

    const LossValue sure =
        semantic_nll(ModelKind::Joint, 2, {-40.0, 0.0, -40.0, -40.0}, x, 1);
    CHECK(sure.value == doctest::Approx(0.0).epsilon(1e-9));

    // the confident-RS regime: nearly deterministic but wrong-side marginals
    const double e = 1e-3;
    const LossValue rs =
        semantic_nll(ModelKind::Independent, 2, {logit(1.0 - e), logit(e)}, x, 1);
    CHECK(rs.value == doctest::Approx(-std::log((1 - e) * (1 - e) + e * e)).epsilon(1e-9));
    CHECK(rs.value > 0.0);

    SUBCASE("agrees with the label-posterior form") {
        Rng rng(52);
        const Program k3 = prog("c1 -> c2 -> c3", 3);
        for (ModelKind kind : kKinds) {
            for (int t = 0; t < 25; ++t) {
                for (int k : {2, 3}) {
                    const Program& p = k == 2 ? x : k3;
                    const auto raw = random_raw(kind, k, rng);
                    const int y = static_cast<int>(rng.uniform_index(2));
                    const double direct = semantic_nll(kind, k, raw, p, y).value;
                    const double via_post =
                        -std::log(label_posterior(joint_table(kind, k, raw), p)[y]);
                    CHECK(direct == doctest::Approx(via_post).epsilon(1e-12));
                }
            }
        }
    }

    SUBCASE("zero-mass label is flagged, not silently clamped") {
        const LossValue dead =
            semantic_nll(ModelKind::Joint, 2, {0.0, -800.0, -800.0, 0.0}, x, 1);
        CHECK(!dead.finite);
        CHECK(std::isinf(dead.value));
        CHECK(std::isnan(dead.grad[0]));

        const LossValue squeezed =
            semantic_nll(ModelKind::Joint, 2, {0.0, -20.0, -20.0, 0.0}, x, 1);
        CHECK(squeezed.finite);
        CHECK(squeezed.clamped);
        CHECK(squeezed.value == doctest::Approx(-std::log(kProbEps)));
    }
}

TEST_CASE("uniform kl values on the worked examples") {
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const LossValue zero = uniform_kl(ModelKind::Joint, 2, {-40.0, 0.0, 0.0, -40.0}, x, 1);
    CHECK(zero.value == doctest::Approx(0.0).epsilon(1e-9));

    CHECK(uniform_kl(ModelKind::Independent, 2, {0.0, 0.0}, x, 0).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const LossValue skew =
        uniform_kl(ModelKind::Joint, 2, {-40.0, std::log(0.9), std::log(0.1), -40.0}, x, 1);
    CHECK(skew.value == doctest::Approx(0.5108).epsilon(1e-3));

    SUBCASE("non-negative, zero only at the uniform restriction") {
        Rng rng(53);
        for (ModelKind kind : kKinds) {
            for (int t = 0; t < 40; ++t) {
                const auto raw = random_raw(kind, 2, rng);
                const int y = static_cast<int>(rng.uniform_index(2));
                CHECK(uniform_kl(kind, 2, raw, x, y).value >= -1e-12);
            }
        }
    }

    SUBCASE("stationary at mu = (0.5, 0.5) on xor") {
        for (int y : {0, 1}) {
            const LossValue l = uniform_kl(ModelKind::Independent, 2, {0.0, 0.0}, x, y);
            CHECK(l.grad[0] == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(l.grad[1] == doctest::Approx(0.0).epsilon(1e-15));
        }
    }

    SUBCASE("independent kind bottoms out at log 2 on xor") {
        double best = 1e9;
        for (double a = 0.02; a < 0.99; a += 0.02)
            for (double b = 0.02; b < 0.99; b += 0.02) {
                const double v =
                    uniform_kl(ModelKind::Independent, 2, {logit(a), logit(b)}, x, 1).value;
                CHECK(v >= std::log(2.0) - 1e-9);
                best = std::min(best, v);
            }
        CHECK(best == doctest::Approx(std::log(2.0)).epsilon(1e-3));
    }
}

TEST_CASE("analytic gradients match central differences") {
    Rng rng(54);
    const Program p2 = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const Program p3 = prog("(c1 & !c2) | (!c1 & c3)", 3);
    int draws = 0;
    for (ModelKind kind : kKinds) {
        for (bool semantic : {true, false}) {
            for (int t = 0; t < 18; ++t) {
                const int k = t % 2 == 0 ? 2 : 3;
                const Program& p = k == 2 ? p2 : p3;
                const auto raw = random_raw(kind, k, rng);
                const int y = static_cast<int>(rng.uniform_index(2));
                const LossValue l = semantic ? semantic_nll(kind, k, raw, p, y)
                                             : uniform_kl(kind, k, raw, p, y);
                REQUIRE(l.finite);
                for (std::size_t i = 0; i < raw.size(); ++i) {
                    const double num = finite_diff(kind, k, raw, p, y, semantic, i);
                    const double scale = std::max({std::abs(l.grad[i]), std::abs(num), 1e-3});
                    CHECK(std::abs(l.grad[i] - num) / scale <= 1e-4);
                }
                ++draws;
            }
        }
    }
    CHECK(draws >= 100);
}

TEST_CASE("joint and ar heads are universal") {
    Rng rng(55);
    for (int k : {2, 3}) {
        const std::size_t n = std::size_t{1} << k;
        for (int t = 0; t < 20; ++t) {
            std::vector<double> target = rng.dirichlet_uniform(n);
            if (t == 0) {  // include a hard corner: a point mass
                std::fill(target.begin(), target.end(), 0.0);
                target[rng.uniform_index(n)] = 1.0;
            }
            if (t == 1 && k == 2) target = {0.0, 0.5, 0.5, 0.0};  // the XOR-aware table
            const Distribution dj =
                joint_table(ModelKind::Joint, k, joint_raw_from_table(target));
            const Distribution da =
                joint_table(ModelKind::Autoregressive, k, ar_raw_from_table(k, target));
            for (std::size_t w = 0; w < n; ++w) {
                CHECK(std::abs(dj.prob(w) - target[w]) <= 1e-9);
                CHECK(std::abs(da.prob(w) - target[w]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("prediction breaks ties toward the lowest index") {
    const Program x = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const auto pm = predict(Distribution::point_mass(Concept(2, 2), Backing::Dense), x);
    CHECK(pm.first == 1);
    CHECK(pm.second == Concept(2, 2));

    const auto tie = predict(Distribution::dense(2, {0.0, 0.5, 0.5, 0.0}), x);
    CHECK(tie.first == 1);
    CHECK(tie.second == Concept(2, 1));

    const auto major = predict(Distribution::dense(2, {0.6, 0.0, 0.0, 0.4}), x);
    CHECK(major.first == 0);
    CHECK(major.second == Concept(2, 0));

    const auto lab_tie = predict(Distribution::dense(2, {0.25, 0.25, 0.25, 0.25}), x);
    CHECK(lab_tie.first == 0);
    CHECK(lab_tie.second == Concept(2, 0));
}
