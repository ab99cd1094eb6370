#include "rsaware/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsaware/experiment.hpp"
#include "rsaware/fuzz.hpp"
#include "rsaware/json_io.hpp"
#include "rsaware/metrics.hpp"

namespace rsaware {

namespace {

namespace fs = std::filesystem;

// positive_int() validates in the double domain and reports the double
// range on failure; integer options want integer bounds in the message
CLI::Range positive_int() { return CLI::Range(1, std::numeric_limits<int>::max()); }

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    int threads = 1;
    bool use_float = false;  // oracle backing; exact by default
};

void add_common(CLI::App* sub, Common& c, const std::string& default_out) {
    c.out = default_out;
    sub->add_option("--seed", c.seed, "Base RNG seed");
    sub->add_option("--out", c.out, "Output file or directory")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads for run matrices")
        ->check(positive_int());
    auto* fl = sub->add_flag("--float", c.use_float, "Float-tolerance oracle backing");
    sub->add_flag("--exact", "Exact rational oracle backing (default)")->excludes(fl);
}

// manifest lands next to a file output, or inside a directory output
fs::path manifest_path(const std::string& out, bool out_is_dir) {
    const fs::path p(out);
    if (out_is_dir) return p / "manifest.json";
    fs::path m = p.parent_path() / (p.stem().string() + ".manifest.json");
    return m;
}

void ensure_parent(const fs::path& p) {
    if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
}

RemapMode mode_from_name(const std::string& name) {
    if (name == "disentangled") return RemapMode::Disentangled;
    if (name == "unrestricted") return RemapMode::Unrestricted;
    throw std::runtime_error("unknown mode: " + name);
}

int cmd_analyze(const Common& c, const std::string& program_path, const std::string& support_spec,
                const std::string& mode_name, double budget, long long max_results) {
    const Program p = read_program_file(program_path);
    const Support s = support_from_spec(support_spec, p.arity(), fs::path("."));
    const RemapMode mode = mode_from_name(mode_name);
    const auto A = enumerate_remappings(p, s, mode, budget, max_results);

    nlohmann::json j;
    j["mode"] = mode_name;
    j["program"] = program_to_json(p);
    j["support"] = support_to_json(s);
    auto& remaps = j["remappings"] = nlohmann::json::array();
    for (const auto& a : A) remaps.push_back(remapping_to_json(a));
    auto& conf = j["confusion_sets"] = nlohmann::json::object();
    for (const Concept& g : s.elements()) {
        nlohmann::json elems = nlohmann::json::array();
        for (const Concept& w : confusion_set(A, g).elements()) elems.push_back(w.str());
        conf[g.str()] = std::move(elems);
    }
    auto& covers = j["implicant_covers"] = nlohmann::json::object();
    for (int y = 0; y < p.label_count(); ++y) {
        nlohmann::json per_label = nlohmann::json::array();
        for (const ConceptSet& cover : enumerate_implicant_covers(p, y)) {
            nlohmann::json elems = nlohmann::json::array();
            for (const Concept& w : cover.elements()) elems.push_back(w.str());
            per_label.push_back(std::move(elems));
        }
        covers[std::to_string(y)] = std::move(per_label);
    }

    ensure_parent(c.out);
    write_json_file(c.out, j);
    nlohmann::json cfg = {{"program", program_path}, {"support", support_spec},
                          {"mode", mode_name},       {"budget", budget},
                          {"max_results", max_results}};
    write_manifest(manifest_path(c.out, false), "analyze", cfg, {});
    std::cout << A.size() << " remapping(s) -> " << c.out << "\n";
    return 0;
}

int cmd_check(const Common& c, const std::string& program_path, const std::string& support_spec,
              const std::string& mode_name, int trials, double budget) {
    const Program p = read_program_file(program_path);
    const Support s = support_from_spec(support_spec, p.arity(), fs::path("."));
    const RemapMode mode = mode_from_name(mode_name);
    const auto A = enumerate_remappings(p, s, mode, budget);

    const AwarenessReport report = check_complete(p, s, A);
    const OracleResult oracle = brute_force_awareness_oracle(
        p, s, A, trials, c.seed, c.use_float ? Backing::Dense : Backing::Exact);

    nlohmann::json j = awareness_report_to_json(report);
    j["mode"] = mode_name;
    j["remapping_count"] = A.size();
    j["oracle"] = oracle_result_to_json(oracle);

    ensure_parent(c.out);
    write_json_file(c.out, j);
    nlohmann::json cfg = {{"program", program_path}, {"support", support_spec},
                          {"mode", mode_name},       {"trials", trials},
                          {"budget", budget},        {"backing", c.use_float ? "float" : "exact"}};
    write_manifest(manifest_path(c.out, false), "check", cfg, {c.seed});

    const int code = report.verdict_complete ? 0 : (report.verdict_weak_necessary ? 2 : 3);
    std::cout << "weak_necessary=" << (report.verdict_weak_necessary ? "yes" : "no")
              << " complete=" << (report.verdict_complete ? "yes" : "no") << " exit=" << code
              << " -> " << c.out << "\n";
    return code;
}

int cmd_eval(const Common& c, const std::string& records_path, int bins,
             const std::string& key_name) {
    const auto records = read_records_csv(records_path);
    const EceKey key = key_name == "positive_prob" ? EceKey::PositiveProb : EceKey::Confidence;
    nlohmann::json j;
    j["acc_y"] = accuracy_label(records);
    j["acc_w"] = accuracy_concept(records);
    j["ece_w"] = ece(records, bins, key);
    std::cout << j.dump(2) << "\n";
    ensure_parent(c.out);
    write_json_file(c.out, j);
    nlohmann::json cfg = {{"records", records_path}, {"bins", bins}, {"ece_key", key_name}};
    write_manifest(manifest_path(c.out, false), "eval", cfg, {});
    return 0;
}

int run_matrix(ExperimentConfig cfg, const Common& c, const std::string& command) {
    cfg.out_dir = c.out;
    cfg.threads = c.threads;
    fs::create_directories(fs::path(c.out));
    const ExperimentResult result = run_experiment(cfg);
    write_manifest(manifest_path(c.out, true), command, experiment_config_to_json(cfg), cfg.seeds);

    for (const auto& row : result.table) {
        std::cout << row.task << " " << row.kind << "+" << row.loss << ": acc_y " << row.acc_y_mean
                  << "+-" << row.acc_y_std << ", acc_w " << row.acc_w_mean << "+-" << row.acc_w_std
                  << ", ece_w " << row.ece_w_mean << "+-" << row.ece_w_std << " (n=" << row.n_seeds
                  << ")\n";
    }
    int failed = 0;
    for (const auto& r : result.runs)
        if (!r.ok) {
            ++failed;
            std::cerr << "run " << run_id(r) << " aborted: " << r.error << "\n";
        }
    std::cout << result.runs.size() - failed << "/" << result.runs.size() << " runs ok -> " << c.out
              << "/results.csv\n";
    return failed == 0 ? 0 : 1;
}

int cmd_train(const Common& c, const std::string& task_name, const std::string& kind_name_,
              const std::string& loss_name_, const TrainConfig& base, int n_train, int n_test,
              double noise_sigma) {
    ExperimentConfig cfg;
    cfg.tasks = {task_name == "traffic_lights" ? traffic_lights_task() : xor_task()};
    cfg.tasks[0].n_train = n_train;
    cfg.tasks[0].n_test = n_test;
    cfg.tasks[0].scene.noise_sigma = noise_sigma;
    cfg.kinds = {kind_from_name(kind_name_)};
    cfg.losses = {loss_from_name(loss_name_)};
    cfg.seeds = {c.seed};
    cfg.base = base;
    return run_matrix(std::move(cfg), c, "train");
}

int cmd_reproduce(const Common& c, const std::string& config_path) {
    ExperimentConfig cfg;
    if (config_path.empty()) {
        cfg = default_experiment_config();
    } else {
        cfg = experiment_config_from_json(read_json_file(config_path),
                                          fs::path(config_path).parent_path());
    }
    return run_matrix(std::move(cfg), c, "reproduce");
}

int cmd_fuzz(const Common& c, int instances, int mixture_trials) {
    const FuzzReport report = run_theorem_fuzz(instances, c.seed, mixture_trials);
    std::cout << fuzz_summary(report);

    nlohmann::json j;
    j["instances"] = report.instances;
    j["complete"] = report.complete_count;
    j["weak_only"] = report.weak_only_count;
    j["neither"] = report.neither_count;
    auto& contradictions = j["contradictions"] = nlohmann::json::array();
    for (const auto& cd : report.contradictions)
        contradictions.push_back({{"instance", cd.instance}, {"detail", cd.detail}});
    ensure_parent(c.out);
    write_json_file(c.out, j);
    nlohmann::json cfg = {{"instances", instances}, {"mixture_trials", mixture_trials}};
    write_manifest(manifest_path(c.out, false), "fuzz-theorems", cfg, {c.seed});
    return report.ok() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Reasoning-shortcut analysis for propositional neurosymbolic predictors"};
    app.require_subcommand(1);

    int exit_code = 0;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Enumerate remappings, confusion sets, covers");
    Common c_an;
    std::string an_program, an_support = "full", an_mode = "disentangled";
    double an_budget = 1e7;
    long long an_max_results = -1;
    analyze->add_option("--program", an_program, "Program JSON file")->required();
    analyze->add_option("--support", an_support, "\"full\" or support JSON file");
    analyze->add_option("--mode", an_mode)->check(CLI::IsMember({"disentangled", "unrestricted"}));
    analyze->add_option("--budget", an_budget, "Enumeration work cap");
    analyze->add_option("--max-results", an_max_results, "Truncate after N remappings");
    add_common(analyze, c_an, "analysis.json");
    analyze->callback([&] {
        exit_code = cmd_analyze(c_an, an_program, an_support, an_mode, an_budget, an_max_results);
    });

    // check
    auto* check =
        app.add_subcommand("check", "Weak/complete awareness verdicts plus the pi-space oracle");
    Common c_ck;
    std::string ck_program, ck_support = "full", ck_mode = "disentangled";
    int ck_trials = 1000;
    double ck_budget = 1e7;
    check->add_option("--program", ck_program, "Program JSON file")->required();
    check->add_option("--support", ck_support, "\"full\" or support JSON file");
    check->add_option("--mode", ck_mode)->check(CLI::IsMember({"disentangled", "unrestricted"}));
    check->add_option("--trials", ck_trials, "Random oracle mixtures after the prefix");
    check->add_option("--budget", ck_budget, "Enumeration work cap");
    add_common(check, c_ck, "report.json");
    check->callback(
        [&] { exit_code = cmd_check(c_ck, ck_program, ck_support, ck_mode, ck_trials, ck_budget); });

    // eval
    auto* eval = app.add_subcommand("eval", "Metrics over a records CSV");
    Common c_ev;
    std::string ev_records, ev_key = "confidence";
    int ev_bins = 10;
    eval->add_option("--records", ev_records, "Records CSV")->required();
    eval->add_option("--bins", ev_bins, "ECE bin count")->check(positive_int());
    eval->add_option("--ece-key", ev_key)->check(CLI::IsMember({"confidence", "positive_prob"}));
    add_common(eval, c_ev, "eval.json");
    eval->callback([&] { exit_code = cmd_eval(c_ev, ev_records, ev_bins, ev_key); });

    // train
    auto* train = app.add_subcommand("train", "Single training run on a synthetic task");
    Common c_tr;
    std::string tr_task = "xor", tr_kind = "independent", tr_loss = "semantic";
    TrainConfig tr_base;
    int tr_n_train = 4000, tr_n_test = 2000;
    double tr_noise = SceneSpec{}.noise_sigma;
    train->add_option("--task", tr_task)->check(CLI::IsMember({"xor", "traffic_lights"}));
    train->add_option("--kind", tr_kind)->check(CLI::IsMember({"independent", "joint", "ar"}));
    train->add_option("--loss", tr_loss)->check(CLI::IsMember({"semantic", "uniform_kl"}));
    train->add_option("--lr", tr_base.lr);
    train->add_option("--batch", tr_base.batch)->check(positive_int());
    train->add_option("--epochs", tr_base.epochs)->check(positive_int());
    train->add_option("--eval-every", tr_base.eval_every)->check(positive_int());
    train->add_option("--hidden", tr_base.hidden, "Hidden layer widths")->capture_default_str();
    train->add_option("--n-train", tr_n_train)->check(positive_int());
    train->add_option("--n-test", tr_n_test)->check(positive_int());
    train->add_option("--noise", tr_noise, "Pixel noise sigma");
    add_common(train, c_tr, "train_out");
    train->callback([&] {
        exit_code =
            cmd_train(c_tr, tr_task, tr_kind, tr_loss, tr_base, tr_n_train, tr_n_test, tr_noise);
    });

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "Full task x kind x loss x seed matrix");
    Common c_rp;
    std::string rp_config;
    reproduce->add_option("--config", rp_config, "Experiment config JSON (default: built-in)");
    add_common(reproduce, c_rp, "reproduce_out");
    reproduce->callback([&] { exit_code = cmd_reproduce(c_rp, rp_config); });

    // fuzz-theorems
    auto* fuzz = app.add_subcommand("fuzz-theorems", "Randomized verdict/oracle agreement suite");
    Common c_fz;
    int fz_instances = 200, fz_trials = 6;
    fuzz->add_option("--instances", fz_instances)->check(positive_int());
    fuzz->add_option("--mixture-trials", fz_trials)->check(positive_int());
    add_common(fuzz, c_fz, "fuzz.json");
    fuzz->callback([&] { exit_code = cmd_fuzz(c_fz, fz_instances, fz_trials); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace rsaware
