#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsaware/awareness.hpp"
#include "rsaware/distribution.hpp"
#include "rsaware/program.hpp"
#include "rsaware/shortcuts.hpp"

namespace rsaware {

inline constexpr const char* kVersion = "0.1.0";

// 64-bit FNV-1a; manifests hash the canonical config dump with it.
std::uint64_t fnv1a(const std::string& text);

// {"k":2,"formula":"..."} or {"k":2,"labels":3,"table":[...]} with table
// index = big-endian concept code. Throws std::runtime_error with the
// offending key on malformed input.
Program program_from_json(const nlohmann::json& j);
Program read_program_file(const std::filesystem::path& path);
nlohmann::json program_to_json(const Program& p, const std::string& formula_text = "");

// "full" or a path (relative to base) to a JSON file holding either an array
// of concept strings or {"elements": [...], "weights": [...]}.
Support support_from_spec(const std::string& spec, int k, const std::filesystem::path& base);
nlohmann::json support_to_json(const Support& s);

// {"map": {"(0,0)":"(1,1)", ...}, "is_identity": ...}
nlohmann::json remapping_to_json(const Remapping& a);

nlohmann::json awareness_report_to_json(const AwarenessReport& report);
nlohmann::json oracle_result_to_json(const OracleResult& res);

// Probability table as a JSON array ordered by big-endian concept index.
nlohmann::json distribution_to_json(const Distribution& d);

// Manifest = {"command", "version", "config_hash", "seeds", ...extra}.
// config_hash is fnv1a over the canonical (sorted-key) dump of `config`.
void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const nlohmann::json& config, const std::vector<std::uint64_t>& seeds);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace rsaware
