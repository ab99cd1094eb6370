#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsaware/metrics.hpp"
#include "rsaware/mlp.hpp"
#include "rsaware/models.hpp"
#include "rsaware/synthtask.hpp"

namespace rsaware {

enum class LossKind { Semantic, UniformKl };

std::string kind_name(ModelKind kind);
std::string loss_name(LossKind loss);
ModelKind kind_from_name(const std::string& name);
LossKind loss_from_name(const std::string& name);

// Perception net mapping pixels to the head's raw parameters.
//   Independent:    one shared trunk applied per bit block (so permuting
//                   blocks permutes the logits)
//   Joint:          full input -> 2^k logits
//   Autoregressive: own block + position one-hot + signed prefix encoding
//                   -> one conditional logit per (position, prefix), with the
//                   prefix space enumerated exactly; each conditional reads
//                   its own position's content plus the earlier bits
class PerceptionModel {
public:
    static PerceptionModel create(ModelKind kind, int k, int pixels_per_bit,
                                  const std::vector<int>& hidden, std::uint64_t seed);

    ModelKind kind() const { return kind_; }
    int arity() const { return k_; }
    int input_dim() const { return k_ * block_; }
    std::size_t raw_count() const { return raw_param_count(kind_, k_); }

    Mlp& net() { return net_; }
    const Mlp& net() const { return net_; }

    // raw head parameters; tapes (one per net call) enable backward
    std::vector<double> forward(const std::vector<double>& x, std::vector<Tape>* tapes = nullptr) const;

    // accumulates d(loss)/d(weights) into grad given d(loss)/d(raw)
    void backward(const std::vector<Tape>& tapes, const std::vector<double>& draw,
                  std::vector<double>& grad) const;

private:
    PerceptionModel(ModelKind kind, int k, int block, Mlp net);
    std::vector<double> ar_input(const std::vector<double>& x, int pos, std::uint32_t prefix) const;

    ModelKind kind_;
    int k_;
    int block_;
    Mlp net_;
};

struct TrainConfig {
    ModelKind kind = ModelKind::Independent;
    LossKind loss = LossKind::Semantic;
    double lr = 1e-3;
    int batch = 64;
    int epochs = 30;
    int eval_every = 5;
    std::uint64_t seed = 0;
    std::vector<int> hidden{32, 32};
    int probe_size = 256;
};

// Predicted-table statistics over a fixed probe slice of the test set,
// grouped by ground-truth concept; the trace data for collapse-vs-awareness
// plots.
struct ProbeStats {
    // [g code] -> mean predicted table (empty when g never appears)
    std::vector<std::vector<double>> mean_table_by_g;
    std::vector<double> marginal_min;  // per bit, over probe inputs
    std::vector<double> marginal_max;
};

struct HistoryEntry {
    int epoch = 0;
    double train_loss = 0.0;
    double acc_y = 0.0;
    double acc_w = 0.0;
    double ece_w = 0.0;
    ProbeStats probe;
};

struct History {
    std::vector<HistoryEntry> entries;
};

struct TrainResult {
    PerceptionModel model;
    History history;
};

std::vector<EvalRecord> evaluate(const PerceptionModel& model, const Program& p,
                                 const std::vector<Sample>& data);

ProbeStats probe_stats(const PerceptionModel& model, const std::vector<Sample>& probe);

// Minibatch Adam on the configured loss. Evaluates on test_data every
// eval_every epochs and always after the final epoch. Throws on non-finite
// loss with a diagnostic.
TrainResult train(const TrainConfig& cfg, const std::vector<Sample>& train_data,
                  const std::vector<Sample>& test_data, const Program& p);

// Max relative error between backprop and central differences (h = 1e-5)
// over a random subset of at least min_weights weights. sabotage_layer >= 0
// negates that layer's analytic gradients first (harness sentinel).
double grad_check(const PerceptionModel& model, LossKind loss, const Program& p, const Sample& s,
                  std::size_t min_weights = 200, std::uint64_t seed = 0, int sabotage_layer = -1);

}  // namespace rsaware
