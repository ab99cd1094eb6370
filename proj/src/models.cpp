#include "rsaware/models.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rsaware {

namespace {

constexpr double kTiny = 1e-300;

void check_raw(ModelKind kind, int k, const std::vector<double>& raw) {
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("model arity out of range");
    if (raw.size() != raw_param_count(kind, k))
        throw std::invalid_argument("raw parameter vector has wrong size");
    for (double x : raw)
        if (!std::isfinite(x)) throw std::invalid_argument("raw parameters must be finite");
}

double clamp_unit(double p) { return std::clamp(p, kProbEps, 1.0 - kProbEps); }

std::vector<double> table_of(ModelKind kind, int k, const std::vector<double>& raw) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<double> t(n, 1.0);
    switch (kind) {
        case ModelKind::Independent: {
            for (std::size_t w = 0; w < n; ++w)
                for (int i = 0; i < k; ++i) {
                    const double mu = clamp_unit(sigmoid(raw[i]));
                    t[w] *= ((w >> (k - 1 - i)) & 1u) ? mu : 1.0 - mu;
                }
            break;
        }
        case ModelKind::Joint: {
            const double mx = *std::max_element(raw.begin(), raw.end());
            double z = 0.0;
            for (std::size_t w = 0; w < n; ++w) z += t[w] = std::exp(raw[w] - mx);
            for (double& x : t) x /= z;
            break;
        }
        case ModelKind::Autoregressive: {
            for (std::size_t w = 0; w < n; ++w)
                for (int i = 0; i < k; ++i) {
                    const std::uint32_t prefix = static_cast<std::uint32_t>(w >> (k - i));
                    const double s = sigmoid(raw[ar_param_index(i, prefix)]);
                    t[w] *= ((w >> (k - 1 - i)) & 1u) ? s : 1.0 - s;
                }
            break;
        }
    }
    return t;
}

// gradient of -sum_w c_w log t(w) wrt raw params, for any weights c summing
// to 1; both losses reduce to this with their own c
std::vector<double> weighted_log_grad(ModelKind kind, int k, const std::vector<double>& raw,
                                      const std::vector<double>& t, const std::vector<double>& c) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<double> g(raw.size(), 0.0);
    switch (kind) {
        case ModelKind::Independent: {
            for (int i = 0; i < k; ++i) {
                const double mu = clamp_unit(sigmoid(raw[i]));
                double mean_bit = 0.0;
                for (std::size_t w = 0; w < n; ++w)
                    if ((w >> (k - 1 - i)) & 1u) mean_bit += c[w];
                g[i] = mu - mean_bit;
            }
            break;
        }
        case ModelKind::Joint: {
            for (std::size_t w = 0; w < n; ++w) g[w] = t[w] - c[w];
            break;
        }
        case ModelKind::Autoregressive: {
            for (std::size_t w = 0; w < n; ++w) {
                if (c[w] == 0.0) continue;
                for (int i = 0; i < k; ++i) {
                    const std::uint32_t prefix = static_cast<std::uint32_t>(w >> (k - i));
                    const std::size_t idx = ar_param_index(i, prefix);
                    const double s = sigmoid(raw[idx]);
                    const double bit = ((w >> (k - 1 - i)) & 1u) ? 1.0 : 0.0;
                    g[idx] += c[w] * (s - bit);
                }
            }
            break;
        }
    }
    return g;
}

LossValue non_finite_loss(std::size_t nparams) {
    LossValue out;
    out.value = std::numeric_limits<double>::infinity();
    out.finite = false;
    out.grad.assign(nparams, std::numeric_limits<double>::quiet_NaN());
    return out;
}

}  // namespace

std::size_t raw_param_count(ModelKind kind, int k) {
    switch (kind) {
        case ModelKind::Independent: return static_cast<std::size_t>(k);
        case ModelKind::Joint: return std::size_t{1} << k;
        case ModelKind::Autoregressive: return (std::size_t{1} << k) - 1;
    }
    return 0;
}

IndependentParams independent_params(const std::vector<double>& raw) {
    IndependentParams p;
    p.mu.reserve(raw.size());
    for (double x : raw) p.mu.push_back(clamp_unit(sigmoid(x)));
    return p;
}

JointParams joint_params(const std::vector<double>& raw) { return JointParams{raw}; }

ArParams ar_params(int k, const std::vector<double>& raw) {
    check_raw(ModelKind::Autoregressive, k, raw);
    return ArParams{k, raw};
}

Distribution joint_table(ModelKind kind, int k, const std::vector<double>& raw) {
    check_raw(kind, k, raw);
    return Distribution::dense_unchecked(k, table_of(kind, k, raw));
}

std::vector<double> joint_raw_from_table(const std::vector<double>& probs) {
    std::vector<double> raw;
    raw.reserve(probs.size());
    for (double p : probs) raw.push_back(std::log(std::max(p, kTiny)));
    return raw;
}

std::vector<double> ar_raw_from_table(int k, const std::vector<double>& probs) {
    if (probs.size() != (std::size_t{1} << k)) throw std::invalid_argument("table size mismatch");
    std::vector<double> raw(raw_param_count(ModelKind::Autoregressive, k));
    for (int i = 0; i < k; ++i) {
        for (std::uint32_t prefix = 0; prefix < (1u << i); ++prefix) {
            // mass of {w : w extends prefix} and of {w : w extends prefix.1}
            double all = 0.0, ones = 0.0;
            const std::size_t lo = std::size_t{prefix} << (k - i);
            const std::size_t hi = std::size_t{prefix + 1} << (k - i);
            for (std::size_t w = lo; w < hi; ++w) {
                all += probs[w];
                if ((w >> (k - 1 - i)) & 1u) ones += probs[w];
            }
            const double cond = all > 0.0 ? std::clamp(ones / all, kTiny, 1.0 - 1e-12) : 0.5;
            raw[ar_param_index(i, prefix)] = logit(cond);
        }
    }
    return raw;
}

std::vector<double> label_posterior(const Distribution& d, const Program& p) {
    if (d.arity() != p.arity()) throw std::invalid_argument("distribution and program arity differ");
    std::vector<double> post(p.label_count(), 0.0);
    for (std::size_t w = 0; w < d.size(); ++w)
        post[static_cast<std::size_t>(p.label_of_index(static_cast<std::uint32_t>(w)))] += d.prob(w);
    return post;
}

LossValue semantic_nll(ModelKind kind, int k, const std::vector<double>& raw, const Program& p,
                       int y) {
    check_raw(kind, k, raw);
    if (p.arity() != k) throw std::invalid_argument("program arity mismatch");
    const ConceptSet cy = p.consistent_set(y);
    if (cy.empty()) throw std::invalid_argument("label has an empty consistent set");
    const std::vector<double> t = table_of(kind, k, raw);
    double mass = 0.0;
    for (const Concept& w : cy.elements()) mass += t[w.index()];
    if (mass == 0.0) return non_finite_loss(raw.size());

    LossValue out;
    out.clamped = mass < kProbEps;
    out.value = -std::log(std::max(mass, kProbEps));
    // restricted posterior r(w) = t(w) 1[w in C_y] / mass
    std::vector<double> c(t.size(), 0.0);
    for (const Concept& w : cy.elements()) c[w.index()] = t[w.index()] / mass;
    out.grad = weighted_log_grad(kind, k, raw, t, c);
    return out;
}

LossValue uniform_kl(ModelKind kind, int k, const std::vector<double>& raw, const Program& p,
                     int y) {
    check_raw(kind, k, raw);
    if (p.arity() != k) throw std::invalid_argument("program arity mismatch");
    const ConceptSet cy = p.consistent_set(y);
    if (cy.empty()) throw std::invalid_argument("label has an empty consistent set");
    const std::vector<double> t = table_of(kind, k, raw);
    const double n = static_cast<double>(cy.size());

    LossValue out;
    double acc = 0.0;
    for (const Concept& w : cy.elements()) {
        const double pw = t[w.index()];
        if (pw == 0.0) return non_finite_loss(raw.size());
        if (pw < kProbEps) out.clamped = true;
        acc += std::log(n * std::max(pw, kProbEps));
    }
    out.value = -acc / n;
    std::vector<double> c(t.size(), 0.0);
    for (const Concept& w : cy.elements()) c[w.index()] = 1.0 / n;
    out.grad = weighted_log_grad(kind, k, raw, t, c);
    return out;
}

std::pair<int, Concept> predict(const Distribution& d, const Program& p) {
    const std::vector<double> post = label_posterior(d, p);
    int best_y = 0;
    for (int y = 1; y < p.label_count(); ++y)
        if (post[static_cast<std::size_t>(y)] > post[static_cast<std::size_t>(best_y)]) best_y = y;
    std::size_t best_w = 0;
    for (std::size_t w = 1; w < d.size(); ++w)
        if (d.prob(w) > d.prob(best_w)) best_w = w;
    return {best_y, Concept(d.arity(), static_cast<std::uint32_t>(best_w))};
}

}  // namespace rsaware
