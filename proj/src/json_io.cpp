#include "rsaware/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace rsaware {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error(what); }

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Program program_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("k")) bad("program json needs an object with \"k\"");
    const int k = j.at("k").get<int>();
    if (j.contains("formula")) {
        return Program::from_formula(Formula::parse(j.at("formula").get<std::string>(), k));
    }
    if (j.contains("table")) {
        if (!j.contains("labels")) bad("program table form needs \"labels\"");
        const int labels = j.at("labels").get<int>();
        const auto table = j.at("table").get<std::vector<int>>();
        return Program::from_table(k, labels, table);
    }
    bad("program json needs \"formula\" or \"table\"");
}

Program read_program_file(const std::filesystem::path& path) {
    return program_from_json(read_json_file(path));
}

nlohmann::json program_to_json(const Program& p, const std::string& formula_text) {
    nlohmann::json j;
    j["k"] = p.arity();
    j["labels"] = p.label_count();
    j["table"] = p.table();
    if (!formula_text.empty()) j["formula"] = formula_text;
    return j;
}

Support support_from_spec(const std::string& spec, int k, const std::filesystem::path& base) {
    if (spec == "full") return Support::full(k);
    const auto j = read_json_file(base / spec);
    const nlohmann::json* elems = nullptr;
    std::vector<double> weights;
    if (j.is_array()) {
        elems = &j;
    } else if (j.is_object() && j.contains("elements")) {
        elems = &j.at("elements");
        if (j.contains("weights")) weights = j.at("weights").get<std::vector<double>>();
    } else {
        bad("support json must be an array of concepts or {\"elements\", \"weights\"}");
    }
    ConceptSet set(k);
    for (const auto& e : *elems) {
        const auto c = Concept::parse(e.get<std::string>(), k);
        if (!c) bad("bad concept string in support: " + e.get<std::string>());
        set.insert(*c);
    }
    if (weights.empty()) return Support(set);
    return Support(set, weights);
}

nlohmann::json support_to_json(const Support& s) {
    nlohmann::json j;
    auto& elems = j["elements"] = nlohmann::json::array();
    for (const Concept& g : s.elements()) elems.push_back(g.str());
    if (s.has_weights()) j["weights"] = s.weights();
    return j;
}

nlohmann::json remapping_to_json(const Remapping& a) {
    nlohmann::json map = nlohmann::json::object();
    for (const Concept& g : a.domain().elements()) map[g.str()] = a.apply(g).str();
    nlohmann::json j;
    j["map"] = std::move(map);
    j["is_identity"] = a.is_identity();
    return j;
}

nlohmann::json awareness_report_to_json(const AwarenessReport& report) {
    nlohmann::json j;
    j["weak_necessary"] = report.verdict_weak_necessary;
    j["complete"] = report.verdict_complete;
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json je;
        je["g"] = e.g.str();
        auto& conf = je["confusion_set"] = nlohmann::json::array();
        for (const Concept& w : e.confusion.elements()) conf.push_back(w.str());
        je["singleton_or_hamming1"] = e.singleton_or_hamming1;
        if (e.matched_implicant_cover) {
            auto& cover = je["matched_implicant_cover"] = nlohmann::json::array();
            for (const Concept& w : e.matched_implicant_cover->elements()) cover.push_back(w.str());
        } else {
            je["matched_implicant_cover"] = nullptr;
        }
        entries.push_back(std::move(je));
    }
    return j;
}

nlohmann::json oracle_result_to_json(const OracleResult& res) {
    nlohmann::json j;
    if (res.weak_witness)
        j["weak_witness_pi"] = *res.weak_witness;
    else
        j["weak_witness_pi"] = nullptr;
    if (res.complete_refutation)
        j["complete_refutation_pi"] = *res.complete_refutation;
    else
        j["complete_refutation_pi"] = nullptr;
    j["refutation_deterministic"] = res.refutation_deterministic;
    return j;
}

nlohmann::json distribution_to_json(const Distribution& d) {
    return nlohmann::json(d.to_doubles());
}

void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const nlohmann::json& config, const std::vector<std::uint64_t>& seeds) {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["config"] = config;
    j["config_hash"] = fnv1a(config.dump());
    j["seeds"] = seeds;
#if defined(__clang__)
    j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    j["compiler"] = std::string("gcc ") + __VERSION__;
#else
    j["compiler"] = "unknown";
#endif
    write_json_file(path, j);
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) bad("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        bad("bad json in " + path.string() + ": " + e.what());
    }
    return j;
}

}  // namespace rsaware
