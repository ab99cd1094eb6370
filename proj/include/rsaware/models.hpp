#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "rsaware/distribution.hpp"
#include "rsaware/program.hpp"

namespace rsaware {

// Concept-distribution heads over raw (unconstrained) parameters:
//   Independent:    k pre-sigmoid marginals
//   Joint:          2^k softmax logits
//   Autoregressive: 2^k - 1 pre-sigmoid conditionals, position-major,
//                   indexed by the big-endian value of the c_{<i} prefix
enum class ModelKind { Independent, Joint, Autoregressive };

inline constexpr double kProbEps = 1e-7;

inline double sigmoid(double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }
inline double logit(double p) { return std::log(p) - std::log1p(-p); }

std::size_t raw_param_count(ModelKind kind, int k);

inline std::size_t ar_param_index(int i, std::uint32_t prefix) {
    return ((std::size_t{1} << i) - 1) + prefix;
}

struct IndependentParams {
    std::vector<double> mu;  // sigmoid(raw), clamped to (eps, 1-eps)
};
struct JointParams {
    std::vector<double> logits;
};
struct ArParams {
    int k = 0;
    std::vector<double> raw;
    // p(c_{i+1} = 1 | c_{<i+1} = prefix)
    double conditional(int i, std::uint32_t prefix) const {
        return sigmoid(raw[ar_param_index(i, prefix)]);
    }
};

IndependentParams independent_params(const std::vector<double>& raw);
JointParams joint_params(const std::vector<double>& raw);
ArParams ar_params(int k, const std::vector<double>& raw);

// explicit 2^k probability table
Distribution joint_table(ModelKind kind, int k, const std::vector<double>& raw);

// raw params reproducing a given table (joint: log-probs, ar: chain rule)
std::vector<double> joint_raw_from_table(const std::vector<double>& probs);
std::vector<double> ar_raw_from_table(int k, const std::vector<double>& probs);

// P(y) = sum_{w in C_y} d(w)
std::vector<double> label_posterior(const Distribution& d, const Program& p);

struct LossValue {
    double value = 0.0;
    std::vector<double> grad;  // wrt raw params; NaN-filled when not finite
    bool finite = true;
    bool clamped = false;  // some probability hit the eps floor inside a log
};

// Eq-1 style semantic loss: -log sum_{w in C_y} p(w)
LossValue semantic_nll(ModelKind kind, int k, const std::vector<double>& raw, const Program& p,
                       int y);

// KL to the uniform distribution over C_y: -(1/|C_y|) sum log(|C_y| p(w))
LossValue uniform_kl(ModelKind kind, int k, const std::vector<double>& raw, const Program& p,
                     int y);

// (argmax label, argmax concept), ties toward the lowest index
std::pair<int, Concept> predict(const Distribution& d, const Program& p);

}  // namespace rsaware
