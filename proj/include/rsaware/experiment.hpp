#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsaware/program.hpp"
#include "rsaware/shortcuts.hpp"
#include "rsaware/synthtask.hpp"
#include "rsaware/trainer.hpp"

namespace rsaware {

struct TaskSpec {
    std::string name;
    std::string formula;  // empty when table-defined
    Program program;
    Support support;
    SceneSpec scene;
    int n_train = 4000;
    int n_test = 2000;
};

// y = c1 xor c2: two disentangled remappings, the collapse testbed.
TaskSpec xor_task();
// y = !(c1 & c2): no disentangled remapping besides identity.
TaskSpec traffic_lights_task();

struct ExperimentConfig {
    std::vector<TaskSpec> tasks;
    std::vector<ModelKind> kinds;
    std::vector<LossKind> losses;
    std::vector<std::uint64_t> seeds;
    TrainConfig base;  // kind, loss, seed overwritten per run
    std::string out_dir;
    int threads = 1;
};

// Both tasks, all kinds, both losses, seeds 0..19, defaults everywhere.
ExperimentConfig default_experiment_config();

struct RunResult {
    std::string task;
    ModelKind kind = ModelKind::Independent;
    LossKind loss = LossKind::Semantic;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double acc_y = 0.0;
    double acc_w = 0.0;
    double ece_w = 0.0;
    History history;
};

struct AggregateRow {
    std::string task;
    std::string kind;
    std::string loss;
    double acc_y_mean = 0.0, acc_y_std = 0.0;
    double acc_w_mean = 0.0, acc_w_std = 0.0;
    double ece_w_mean = 0.0, ece_w_std = 0.0;
    int n_seeds = 0;  // successful runs only
};

struct ExperimentResult {
    std::vector<RunResult> runs;
    std::vector<AggregateRow> table;

    bool all_ok() const;
};

std::string run_id(const RunResult& r);

// Executes the task x kind x loss x seed matrix. Runs are independent and
// self-seeded, so the result is identical for any thread count; files
// (per-run history.csv and probe.json under <out>/runs/<id>/, results.csv)
// are written single-threaded after the joins when out_dir is set. Training
// aborts become ok=false rows rather than exceptions.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Fixed column set:
// task,kind,loss,acc_y_mean,acc_y_std,acc_w_mean,acc_w_std,ece_w_mean,ece_w_std,n_seeds
void write_results_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& table);
// run_id,seed,kind,loss,epoch,train_loss,acc_y,acc_w,ece_w
void write_history_csv(const std::filesystem::path& path, const RunResult& r);
// One object per eval step with the probe tables keyed by concept.
void write_probe_json(const std::filesystem::path& path, const RunResult& r, int k);

nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);
// Task entries are names ("xor", "traffic_lights") or {"name", "program",
// "support"} objects; file paths resolve relative to base.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const std::filesystem::path& base);

}  // namespace rsaware
