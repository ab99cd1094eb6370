#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rsaware/rng.hpp"

namespace rsaware {

// Per-call activation record needed to backpropagate later: acts[0] is the
// input, acts[l+1] the post-activation output of layer l.
struct Tape {
    std::vector<std::vector<double>> acts;
};

// Fully connected net, ReLU on hidden layers, identity output. Parameters
// live in one flat vector (per layer: row-major weights, then biases) so the
// optimizer and the finite-difference checker can address them uniformly.
class Mlp {
public:
    Mlp(int input_dim, std::vector<int> hidden, int output_dim);

    int input_dim() const { return dims_.front(); }
    int output_dim() const { return dims_.back(); }
    std::size_t layer_count() const { return dims_.size() - 1; }
    std::size_t param_count() const { return params_.size(); }

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    // U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases
    void init(Rng& rng);

    std::vector<double> forward(const std::vector<double>& input, Tape* tape = nullptr) const;

    // accumulates d(loss)/d(params) into grad given d(loss)/d(output)
    void backward(const Tape& tape, const std::vector<double>& dout,
                  std::vector<double>& grad) const;

    // [begin, end) of one layer's parameters in the flat vector
    std::pair<std::size_t, std::size_t> layer_range(std::size_t layer) const;

private:
    std::vector<int> dims_;            // input, hidden..., output
    std::vector<std::size_t> offset_;  // flat offset per layer
    std::vector<double> params_;
};

// Adam re-implemented from the standard update equations.
class Adam {
public:
    Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
    void step(std::vector<double>& params, const std::vector<double>& grad);

private:
    double lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    std::vector<double> m_, v_;
};

}  // namespace rsaware
