// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 7 runs the full training matrix and dominates the
// runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "rsaware/awareness.hpp"
#include "rsaware/experiment.hpp"
#include "rsaware/fuzz.hpp"
#include "rsaware/metrics.hpp"
#include "rsaware/models.hpp"
#include "rsaware/rng.hpp"
#include "rsaware/trainer.hpp"

using namespace rsaware;

namespace {

struct Checker {
    bool pass = true;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        notes << (notes.tellp() > 0 ? "; " : "") << what;
    }
};

Program prog(const char* text, int k) { return Program::from_formula(Formula::parse(text, k)); }

Remapping negate_all(const Program& p, const Support& s) {
    ConceptMap map;
    const std::uint32_t mask = (1u << p.arity()) - 1u;
    for (const Concept& g : s.elements())
        map.emplace_back(g, Concept(p.arity(), g.index() ^ mask));
    return Remapping::create(p, s, map);
}

Remapping flip_c2(const Program& p, const Support& s) {
    ConceptMap map;
    for (const Concept& g : s.elements()) map.emplace_back(g, g.with_bit(1, !g.bit(1)));
    return Remapping::create(p, s, map);
}

// ---------------------------------------------------------------- criteria

// XOR disentangled = {identity, negate-both}; Traffic Lights = {identity}.
void criterion_1(Checker& c) {
    const Program xorp = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const Support s = Support::full(2);
    auto A = enumerate_remappings(xorp, s, RemapMode::Disentangled);
    std::vector<Remapping> expected{Remapping::identity(xorp, s), negate_all(xorp, s)};
    std::sort(expected.begin(), expected.end());
    c.require(A == expected, "XOR disentangled set is not {identity, bit-swap}");

    const Program nand = prog("!(c1 & c2)", 2);
    auto B = enumerate_remappings(nand, s, RemapMode::Disentangled);
    const std::vector<Remapping> only_id{Remapping::identity(nand, s)};
    c.require(B == only_id, "Traffic Lights disentangled set is not {identity}");
}

// Weak and complete awareness verdicts on the two worked programs.
void criterion_2(Checker& c) {
    const Support s = Support::full(2);
    const Program xorp = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const std::vector<Remapping> xor_rs{Remapping::identity(xorp, s), negate_all(xorp, s)};
    c.require(!check_weak_necessary(xorp, s, xor_rs).verdict_weak_necessary,
              "XOR reported weakly RS-aware");
    c.require(!check_complete(xorp, s, xor_rs).verdict_complete, "XOR reported completely RS-aware");

    const Program c1 = prog("c1", 2);
    const std::vector<Remapping> c1_rs{Remapping::identity(c1, s), flip_c2(c1, s)};
    c.require(check_weak_necessary(c1, s, c1_rs).verdict_weak_necessary,
              "beta=c1 failed the implicant-cover condition");
    c.require(check_complete(c1, s, c1_rs).verdict_complete,
              "beta=c1 not reported completely RS-aware");
}

// Mixer reproduces the mixture exactly for 50 random pi at every g.
void criterion_3(Checker& c) {
    const Support s = Support::full(2);
    const Program c1 = prog("c1", 2);
    const std::vector<Remapping> A{Remapping::identity(c1, s), flip_c2(c1, s)};
    Rng rng(20240301);
    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        const MixtureSpec mix(A, rng.dirichlet_uniform(A.size()));
        for (const Concept& g : s.elements()) {
            const auto mu = construct_uci_mixer(mix, g);
            if (!mu) {
                c.require(false, "mixer refused g=" + g.str());
                return;
            }
            const Distribution lhs = Distribution::factorized_exact(*mu);
            const Distribution rhs = mixture_remap_distribution(mix, g, Backing::Exact);
            if (!lhs.exact_equals(rhs)) {
                c.require(false, "exact equality failed at g=" + g.str());
                return;
            }
            ++checked;
        }
    }
    c.require(checked == 200, "expected 200 exact comparisons");
}

// >= 200 random instances, zero verdict/oracle contradictions.
void criterion_4(Checker& c, std::string& extra) {
    const FuzzReport report = run_theorem_fuzz(220, 2024, 6);
    c.require(report.ok(), report.contradictions.empty()
                               ? ""
                               : report.contradictions.front().detail);
    c.require(report.complete_count > 0 && report.neither_count > 0 && report.weak_only_count > 0,
              "fuzz never hit all verdict classes");
    std::ostringstream os;
    os << report.instances << " instances (" << report.complete_count << " complete, "
       << report.weak_only_count << " weak-only, " << report.neither_count << " neither)";
    extra = os.str();
}

// semantic_nll == -log posterior; analytic and backprop grads vs central diffs.
void criterion_5(Checker& c) {
    const Program p2 = prog("(c1 & !c2) | (!c1 & c2)", 2);
    const Program p3 = prog("c1 -> c2 -> c3", 3);
    const ModelKind kinds[] = {ModelKind::Independent, ModelKind::Joint,
                               ModelKind::Autoregressive};
    Rng rng(555);

    double max_value_err = 0.0;
    int value_draws = 0;
    for (int t = 0; t < 1000; ++t) {
        const Program& p = (t % 2 == 0) ? p2 : p3;
        const ModelKind kind = kinds[t % 3];
        std::vector<double> raw(raw_param_count(kind, p.arity()));
        for (auto& v : raw) v = 2.0 * rng.gaussian();
        const int y = static_cast<int>(rng.uniform_index(p.label_count()));
        const LossValue loss = semantic_nll(kind, p.arity(), raw, p, y);
        if (!loss.finite || loss.clamped) continue;
        ++value_draws;
        const auto post = label_posterior(joint_table(kind, p.arity(), raw), p);
        const double ref = -std::log(post[y]);
        max_value_err = std::max(max_value_err,
                                 std::abs(loss.value - ref) / std::max(1.0, std::abs(ref)));
    }
    c.require(value_draws >= 900, "too many semantic_nll draws skipped");
    c.require(max_value_err <= 1e-12, "semantic_nll deviates from -log posterior");

    // analytic raw-parameter gradients against central differences
    double max_grad_err = 0.0;
    int grad_draws = 0;
    const double h = 1e-5;
    for (int t = 0; t < 240; ++t) {
        const Program& p = (t % 2 == 0) ? p2 : p3;
        const ModelKind kind = kinds[t % 3];
        const bool kl = (t / 6) % 2 == 0;
        std::vector<double> raw(raw_param_count(kind, p.arity()));
        for (auto& v : raw) v = 1.5 * rng.gaussian();
        const int y = static_cast<int>(rng.uniform_index(p.label_count()));
        auto eval = [&](const std::vector<double>& r) {
            return kl ? uniform_kl(kind, p.arity(), r, p, y) : semantic_nll(kind, p.arity(), r, p, y);
        };
        const LossValue loss = eval(raw);
        if (!loss.finite || loss.clamped) continue;
        ++grad_draws;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            std::vector<double> up = raw, dn = raw;
            up[i] += h;
            dn[i] -= h;
            const double num = (eval(up).value - eval(dn).value) / (2.0 * h);
            const double err = std::abs(loss.grad[i] - num) /
                               std::max({std::abs(loss.grad[i]), std::abs(num), 1e-3});
            max_grad_err = std::max(max_grad_err, err);
        }
    }
    c.require(grad_draws >= 200, "too many gradient draws skipped");
    c.require(max_grad_err <= 1e-4, "analytic loss gradient deviates from finite differences");

    // full-model backprop through every kind x loss
    const SceneSpec scene;
    const auto data = generate_dataset(scene, p2, Support::full(2), 4, 99);
    double max_bp_err = 0.0;
    for (ModelKind kind : kinds) {
        for (LossKind loss : {LossKind::Semantic, LossKind::UniformKl}) {
            const auto model =
                PerceptionModel::create(kind, 2, scene.pixels_per_bit, {16, 16}, 7);
            max_bp_err = std::max(max_bp_err, grad_check(model, loss, p2, data[0], 200, 3));
        }
    }
    c.require(max_bp_err <= 1e-4, "backprop deviates from finite differences");
}

// Gradient descent on raw independent parameters: uniform-KL on XOR collapses
// to the 0.5 marginals with loss log 2 from every start.
void criterion_6(Checker& c) {
    const Program xorp = prog("(c1 & !c2) | (!c1 & c2)", 2);
    Rng rng(606);
    const double log2 = std::log(2.0);
    for (int start = 0; start < 100; ++start) {
        std::vector<double> theta{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
        for (int it = 0; it < 200; ++it) {
            const LossValue l0 = uniform_kl(ModelKind::Independent, 2, theta, xorp, 0);
            const LossValue l1 = uniform_kl(ModelKind::Independent, 2, theta, xorp, 1);
            for (int i = 0; i < 2; ++i) theta[i] -= 4.0 * 0.5 * (l0.grad[i] + l1.grad[i]);
        }
        const double loss = 0.5 * (uniform_kl(ModelKind::Independent, 2, theta, xorp, 0).value +
                                   uniform_kl(ModelKind::Independent, 2, theta, xorp, 1).value);
        const double m1 = sigmoid(theta[0]), m2 = sigmoid(theta[1]);
        if (std::abs(m1 - 0.5) > 1e-3 || std::abs(m2 - 0.5) > 1e-3) {
            c.require(false, "marginals escaped 0.5 +- 1e-3 at start " + std::to_string(start));
            return;
        }
        if (std::abs(loss - log2) > 1e-6) {
            c.require(false, "loss not within 1e-6 of log 2 at start " + std::to_string(start));
            return;
        }
    }
}

// Full 2-task x 3-kind x 2-loss x 20-seed matrix phenomenology.
void criterion_7(Checker& c, std::string& extra) {
    ExperimentConfig cfg = default_experiment_config();
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult result = run_experiment(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    c.require(result.all_ok(), "some training runs aborted");

    auto runs_of = [&](const char* task, ModelKind kind, LossKind loss) {
        std::vector<const RunResult*> out;
        for (const auto& r : result.runs)
            if (r.ok && r.task == task && r.kind == kind && r.loss == loss) out.push_back(&r);
        return out;
    };
    auto mean_of = [](const std::vector<const RunResult*>& rs, auto proj) {
        double sum = 0.0;
        for (const auto* r : rs) sum += proj(*r);
        return rs.empty() ? 0.0 : sum / static_cast<double>(rs.size());
    };

    // (a) independent+semantic on XOR: perfect labels, bimodal concepts
    {
        const auto rs = runs_of("xor", ModelKind::Independent, LossKind::Semantic);
        c.require(rs.size() == 20, "xor independent+semantic missing runs");
        int low = 0, high = 0;
        for (const auto* r : rs) {
            c.require(r->acc_y >= 99.0, "xor independent+semantic run below 99% label accuracy");
            const bool is_low = r->acc_w <= 5.0, is_high = r->acc_w >= 95.0;
            c.require(is_low || is_high, "xor independent+semantic run outside both modes");
            low += is_low;
            high += is_high;
        }
        c.require(low > 0 && high > 0, "only one mode across 20 seeds");
        std::ostringstream os;
        os << "xor ind+sem modes " << low << " RS / " << high << " ground truth";
        extra = os.str();
    }
    // (b) joint+uniform_kl on XOR: calibrated RS-awareness
    {
        const auto rs = runs_of("xor", ModelKind::Joint, LossKind::UniformKl);
        c.require(mean_of(rs, [](const RunResult& r) { return r.acc_y; }) >= 99.0,
                  "xor joint+uniform_kl mean label accuracy below 99");
        c.require(mean_of(rs, [](const RunResult& r) { return r.ece_w; }) <= 15.0,
                  "xor joint+uniform_kl mean ECE above 15");
    }
    // (c) independent+uniform_kl on XOR: stuck at the uninformative minimizer
    {
        const auto rs = runs_of("xor", ModelKind::Independent, LossKind::UniformKl);
        const double mean_y = mean_of(rs, [](const RunResult& r) { return r.acc_y; });
        c.require(mean_y >= 45.0 && mean_y <= 55.0,
                  "xor independent+uniform_kl mean label accuracy outside [45,55]");
        for (const auto* r : rs) {
            const auto& probe = r->history.entries.back().probe;
            for (double m : probe.marginal_min)
                c.require(m >= 0.45, "probe marginal below 0.45");
            for (double m : probe.marginal_max)
                c.require(m <= 0.55, "probe marginal above 0.55");
        }
    }
    // Traffic Lights cells
    {
        const auto ind = runs_of("traffic_lights", ModelKind::Independent, LossKind::Semantic);
        const auto ar = runs_of("traffic_lights", ModelKind::Autoregressive, LossKind::Semantic);
        const auto joint = runs_of("traffic_lights", ModelKind::Joint, LossKind::Semantic);
        c.require(mean_of(ind, [](const RunResult& r) { return r.acc_w; }) >= 95.0,
                  "traffic lights independent+semantic mean concept accuracy below 95");
        c.require(mean_of(ar, [](const RunResult& r) { return r.acc_w; }) >= 95.0,
                  "traffic lights ar+semantic mean concept accuracy below 95");
        c.require(mean_of(joint, [](const RunResult& r) { return r.acc_w; }) <= 90.0,
                  "traffic lights joint+semantic mean concept accuracy above 90");
        c.require(mean_of(joint, [](const RunResult& r) { return r.acc_y; }) >= 99.0,
                  "traffic lights joint+semantic mean label accuracy below 99");
    }

    c.require(secs < 600.0, "matrix exceeded the 10 minute budget");
    std::ostringstream os;
    os << extra << ", " << result.runs.size() << " runs in " << static_cast<int>(secs) << "s";
    extra = os.str();
}

// ECE worked examples exactly; calibrated stream stays under 1.5.
void criterion_8(Checker& c) {
    {
        std::vector<EvalRecord> records(40, {0, 0, {1.0}, {1}});
        for (auto& r : records) r.bit_probs = {1.0}, r.true_bits = {1};
        c.require(ece(records) == 0.0, "confident correct stream not 0");
    }
    {
        std::vector<EvalRecord> records;
        for (int i = 0; i < 40; ++i) records.push_back({0, 0, {0.5}, {i % 2}});
        c.require(ece(records) == 0.0, "p=0.5 coin stream not 0");
    }
    {
        std::vector<EvalRecord> records;
        for (int i = 0; i < 40; ++i) records.push_back({0, 0, {0.9}, {i % 2}});
        c.require(std::abs(ece(records) - 40.0) < 1e-12, "0.9-confidence half-right stream not 40");
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        std::vector<EvalRecord> records;
        records.reserve(100000);
        for (int i = 0; i < 100000; ++i) {
            const double conf = rng.uniform(0.5, 1.0);
            const int correct = rng.uniform() < conf ? 1 : 0;
            records.push_back({0, 0, {conf}, {correct}});
        }
        if (ece(records) > 1.5) {
            c.require(false, "calibrated stream ECE above 1.5 at seed " + std::to_string(seed));
            return;
        }
    }
}

}  // namespace

int main() {
    int failures = 0;

    auto run = [&](int id, const char* title, auto&& fn, double budget) {
        Checker c;
        std::string extra;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(c, extra);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (budget > 0.0) c.require(secs < budget, "over time budget");
        const bool ok = c.pass;
        failures += ok ? 0 : 1;
        std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id, title, secs,
                    extra.empty() && c.notes.str().empty() ? "" : " -- ",
                    (ok ? extra : c.notes.str()).c_str());
        std::fflush(stdout);
    };

    run(1, "XOR disentangled RSs = {identity, bit-swap}; Traffic Lights = {identity}",
        [](Checker& c, std::string&) { criterion_1(c); }, 1.0);
    run(2, "weak/complete awareness verdicts on the worked programs",
        [](Checker& c, std::string&) { criterion_2(c); }, 1.0);
    run(3, "construct_uci_mixer exact over 50 random mixtures",
        [](Checker& c, std::string&) { criterion_3(c); }, 0.0);
    run(4, "theorem fuzz, 220 instances, zero contradictions",
        [](Checker& c, std::string& e) { criterion_4(c, e); }, 60.0);
    run(5, "loss values and gradients against independent oracles",
        [](Checker& c, std::string&) { criterion_5(c); }, 0.0);
    run(6, "uniform-KL collapse on XOR from 100 random starts",
        [](Checker& c, std::string&) { criterion_6(c); }, 0.0);
    run(7, "training phenomenology matrix, 240 runs",
        [](Checker& c, std::string& e) { criterion_7(c, e); }, 0.0);
    run(8, "ECE worked examples and calibrated stream",
        [](Checker& c, std::string&) { criterion_8(c); }, 0.0);

    if (failures == 0)
        std::printf("acceptance: all 8 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
