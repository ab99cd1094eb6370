#include "rsaware/experiment.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rsaware/json_io.hpp"
#include "rsaware/rng.hpp"

namespace rsaware {

namespace {

TaskSpec formula_task(const std::string& name, const std::string& formula) {
    TaskSpec t{name,
               formula,
               Program::from_formula(Formula::parse(formula, 2)),
               Support::full(2),
               SceneSpec{},
               4000,
               2000};
    return t;
}

struct Stats {
    double mean = 0.0;
    double stdev = 0.0;  // sample std, 0 for n < 2
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return s;
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return s;
}

RunResult execute_run(const TaskSpec& task, const ExperimentConfig& cfg, ModelKind kind,
                      LossKind loss, std::uint64_t seed) {
    RunResult r;
    r.task = task.name;
    r.kind = kind;
    r.loss = loss;
    r.seed = seed;
    try {
        const std::uint64_t data_seed = derive_seed(seed, 0xD474u ^ fnv1a(task.name));
        const auto all = generate_dataset(task.scene, task.program, task.support,
                                          task.n_train + task.n_test, data_seed);
        const auto [train_set, test_set] = split_dataset(all, task.n_train, task.n_test);

        TrainConfig tc = cfg.base;
        tc.kind = kind;
        tc.loss = loss;
        tc.seed = seed;
        TrainResult tr = train(tc, train_set, test_set, task.program);

        r.history = std::move(tr.history);
        const HistoryEntry& last = r.history.entries.back();
        r.acc_y = last.acc_y;
        r.acc_w = last.acc_w;
        r.ece_w = last.ece_w;
        r.ok = true;
    } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

std::string csv_num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

TaskSpec xor_task() { return formula_task("xor", "(c1 & !c2) | (!c1 & c2)"); }

TaskSpec traffic_lights_task() { return formula_task("traffic_lights", "!(c1 & c2)"); }

ExperimentConfig default_experiment_config() {
    ExperimentConfig cfg;
    cfg.tasks = {xor_task(), traffic_lights_task()};
    cfg.kinds = {ModelKind::Independent, ModelKind::Joint, ModelKind::Autoregressive};
    cfg.losses = {LossKind::Semantic, LossKind::UniformKl};
    for (std::uint64_t s = 0; s < 20; ++s) cfg.seeds.push_back(s);
    return cfg;
}

bool ExperimentResult::all_ok() const {
    for (const auto& r : runs)
        if (!r.ok) return false;
    return true;
}

std::string run_id(const RunResult& r) {
    std::ostringstream os;
    os << r.task << "_" << kind_name(r.kind) << "_" << loss_name(r.loss) << "_s" << r.seed;
    return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.tasks.empty() || cfg.kinds.empty() || cfg.losses.empty() || cfg.seeds.empty())
        throw std::invalid_argument("experiment matrix has an empty axis");
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.seeds.size(); ++j)
            if (cfg.seeds[i] == cfg.seeds[j]) throw std::invalid_argument("duplicate seed");

    struct Job {
        const TaskSpec* task;
        ModelKind kind;
        LossKind loss;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto& task : cfg.tasks)
        for (ModelKind kind : cfg.kinds)
            for (LossKind loss : cfg.losses)
                for (std::uint64_t seed : cfg.seeds) jobs.push_back({&task, kind, loss, seed});

    ExperimentResult result;
    result.runs.resize(jobs.size());

    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            result.runs[i] =
                execute_run(*jobs[i].task, cfg, jobs[i].kind, jobs[i].loss, jobs[i].seed);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
                result.runs[i] =
                    execute_run(*jobs[i].task, cfg, jobs[i].kind, jobs[i].loss, jobs[i].seed);
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // cell order follows the job nesting: task-major, then kind, then loss
    for (const auto& task : cfg.tasks) {
        for (ModelKind kind : cfg.kinds) {
            for (LossKind loss : cfg.losses) {
                std::vector<double> ys, ws, es;
                for (const auto& r : result.runs) {
                    if (!r.ok || r.task != task.name || r.kind != kind || r.loss != loss) continue;
                    ys.push_back(r.acc_y);
                    ws.push_back(r.acc_w);
                    es.push_back(r.ece_w);
                }
                AggregateRow row;
                row.task = task.name;
                row.kind = kind_name(kind);
                row.loss = loss_name(loss);
                const Stats sy = stats_of(ys), sw = stats_of(ws), se = stats_of(es);
                row.acc_y_mean = sy.mean;
                row.acc_y_std = sy.stdev;
                row.acc_w_mean = sw.mean;
                row.acc_w_std = sw.stdev;
                row.ece_w_mean = se.mean;
                row.ece_w_std = se.stdev;
                row.n_seeds = static_cast<int>(ys.size());
                result.table.push_back(row);
            }
        }
    }

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        const fs::path out(cfg.out_dir);
        fs::create_directories(out / "runs");
        for (const auto& r : result.runs) {
            const fs::path dir = out / "runs" / run_id(r);
            fs::create_directories(dir);
            if (r.ok) {
                write_history_csv(dir / "history.csv", r);
                int k = 2;
                for (const auto& task : cfg.tasks)
                    if (task.name == r.task) k = task.program.arity();
                write_probe_json(dir / "probe.json", r, k);
            } else {
                std::ofstream err(dir / "error.txt");
                err << r.error << "\n";
            }
        }
        write_results_csv(out / "results.csv", result.table);
    }

    return result;
}

void write_results_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "task,kind,loss,acc_y_mean,acc_y_std,acc_w_mean,acc_w_std,ece_w_mean,ece_w_std,n_"
           "seeds\n";
    for (const auto& r : table) {
        out << r.task << "," << r.kind << "," << r.loss << "," << csv_num(r.acc_y_mean) << ","
            << csv_num(r.acc_y_std) << "," << csv_num(r.acc_w_mean) << "," << csv_num(r.acc_w_std)
            << "," << csv_num(r.ece_w_mean) << "," << csv_num(r.ece_w_std) << "," << r.n_seeds
            << "\n";
    }
}

void write_history_csv(const std::filesystem::path& path, const RunResult& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "run_id,seed,kind,loss,epoch,train_loss,acc_y,acc_w,ece_w\n";
    const std::string id = run_id(r);
    for (const auto& e : r.history.entries) {
        out << id << "," << r.seed << "," << kind_name(r.kind) << "," << loss_name(r.loss) << ","
            << e.epoch << "," << csv_num(e.train_loss) << "," << csv_num(e.acc_y) << ","
            << csv_num(e.acc_w) << "," << csv_num(e.ece_w) << "\n";
    }
}

void write_probe_json(const std::filesystem::path& path, const RunResult& r, int k) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& e : r.history.entries) {
        nlohmann::json je;
        je["epoch"] = e.epoch;
        je["marginal_min"] = e.probe.marginal_min;
        je["marginal_max"] = e.probe.marginal_max;
        nlohmann::json tables = nlohmann::json::object();
        for (std::size_t code = 0; code < e.probe.mean_table_by_g.size(); ++code) {
            const auto& table = e.probe.mean_table_by_g[code];
            if (table.empty()) continue;
            tables[Concept(k, static_cast<std::uint32_t>(code)).str()] = table;
        }
        je["mean_table_by_g"] = std::move(tables);
        steps.push_back(std::move(je));
    }
    nlohmann::json j;
    j["run_id"] = run_id(r);
    j["steps"] = std::move(steps);
    write_json_file(path, j);
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    auto& tasks = j["tasks"] = nlohmann::json::array();
    for (const auto& t : cfg.tasks) {
        nlohmann::json jt;
        jt["name"] = t.name;
        jt["program"] = program_to_json(t.program, t.formula);
        jt["support"] = support_to_json(t.support);
        jt["n_train"] = t.n_train;
        jt["n_test"] = t.n_test;
        jt["scene"] = {{"k", t.scene.k},
                       {"style_dim", t.scene.style_dim},
                       {"pixels_per_bit", t.scene.pixels_per_bit},
                       {"separation", t.scene.separation},
                       {"noise_sigma", t.scene.noise_sigma}};
        tasks.push_back(std::move(jt));
    }
    auto& kinds = j["kinds"] = nlohmann::json::array();
    for (ModelKind kind : cfg.kinds) kinds.push_back(kind_name(kind));
    auto& losses = j["losses"] = nlohmann::json::array();
    for (LossKind loss : cfg.losses) losses.push_back(loss_name(loss));
    j["seeds"] = cfg.seeds;
    j["train"] = {{"lr", cfg.base.lr},           {"batch", cfg.base.batch},
                  {"epochs", cfg.base.epochs},   {"eval_every", cfg.base.eval_every},
                  {"hidden", cfg.base.hidden},   {"probe_size", cfg.base.probe_size}};
    j["threads"] = cfg.threads;
    return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const std::filesystem::path& base) {
    ExperimentConfig cfg = default_experiment_config();

    if (j.contains("tasks")) {
        cfg.tasks.clear();
        for (const auto& jt : j.at("tasks")) {
            if (jt.is_string()) {
                const std::string name = jt.get<std::string>();
                if (name == "xor")
                    cfg.tasks.push_back(xor_task());
                else if (name == "traffic_lights")
                    cfg.tasks.push_back(traffic_lights_task());
                else
                    throw std::runtime_error("unknown task name: " + name);
                continue;
            }
            TaskSpec t = xor_task();
            t.name = jt.at("name").get<std::string>();
            t.formula.clear();
            if (jt.at("program").is_string())
                t.program = read_program_file(base / jt.at("program").get<std::string>());
            else
                t.program = program_from_json(jt.at("program"));
            if (jt.at("program").is_object() && jt.at("program").contains("formula"))
                t.formula = jt.at("program").at("formula").get<std::string>();
            t.support = support_from_spec(jt.value("support", std::string("full")),
                                          t.program.arity(), base);
            t.n_train = jt.value("n_train", t.n_train);
            t.n_test = jt.value("n_test", t.n_test);
            t.scene.k = t.program.arity();
            if (jt.contains("scene")) {
                const auto& js = jt.at("scene");
                t.scene.style_dim = js.value("style_dim", t.scene.style_dim);
                t.scene.pixels_per_bit = js.value("pixels_per_bit", t.scene.pixels_per_bit);
                t.scene.separation = js.value("separation", t.scene.separation);
                t.scene.noise_sigma = js.value("noise_sigma", t.scene.noise_sigma);
            }
            t.scene.validate();
            cfg.tasks.push_back(std::move(t));
        }
    }
    if (j.contains("kinds")) {
        cfg.kinds.clear();
        for (const auto& s : j.at("kinds")) cfg.kinds.push_back(kind_from_name(s.get<std::string>()));
    }
    if (j.contains("losses")) {
        cfg.losses.clear();
        for (const auto& s : j.at("losses")) cfg.losses.push_back(loss_from_name(s.get<std::string>()));
    }
    if (j.contains("seeds")) {
        cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    } else if (j.contains("n_seeds")) {
        cfg.seeds.clear();
        for (std::uint64_t s = 0; s < j.at("n_seeds").get<std::uint64_t>(); ++s)
            cfg.seeds.push_back(s);
    }
    if (j.contains("train")) {
        const auto& jt = j.at("train");
        cfg.base.lr = jt.value("lr", cfg.base.lr);
        cfg.base.batch = jt.value("batch", cfg.base.batch);
        cfg.base.epochs = jt.value("epochs", cfg.base.epochs);
        cfg.base.eval_every = jt.value("eval_every", cfg.base.eval_every);
        if (jt.contains("hidden")) cfg.base.hidden = jt.at("hidden").get<std::vector<int>>();
        cfg.base.probe_size = jt.value("probe_size", cfg.base.probe_size);
    }
    cfg.threads = j.value("threads", cfg.threads);
    return cfg;
}

}  // namespace rsaware
