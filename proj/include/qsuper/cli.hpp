#pragma once

#include "qsuper/fock.hpp"
#include "qsuper/report.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsuper {

inline constexpr int kExitPass = 0;
inline constexpr int kExitRelationFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitTooLarge = 3;

inline constexpr int kReportSchemaVersion = 1;

/// Environment variable naming a default config file for `verify` and `export`.
inline constexpr const char* kConfigEnvVar = "QSUPER_CONFIG";

struct RunConfig {
    LatticeConfig lattice;
    /// Empty means every suite.
    std::vector<std::string> suites;
    /// Extra runs of the selected suites at nu drawn uniformly from [0.05, 0.45].
    int random_q = 0;
    std::uint64_t seed = 1;
    bool parallel = true;
    std::string report_json;
    std::string report_markdown;

    std::vector<std::string> selected_suites() const;
    bool negative_controls() const { return lattice.faults.any(); }
};

/// Parses the flat JSON config. Unknown keys, wrong types, and both or
/// neither of q.nu / q.real are ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// Everything that affects results (output paths excluded), keys sorted.
nlohmann::json config_to_json(const RunConfig& cfg);

/// FNV-1a 64 of config_to_json(cfg).dump(), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Throws ConfigError / InstanceTooLarge before any basis is built.
void validate(const RunConfig& cfg);

std::vector<RelationReport> run_verification(const RunConfig& cfg);
int exit_code_for(const std::vector<RelationReport>& reports);

nlohmann::json report_to_json(const RunConfig& cfg, const std::vector<RelationReport>& reports);
std::string markdown_summary(const std::vector<RelationReport>& reports);

/// Generator by id: "E+:a", "E-:a", "H:a", "Gamma", "CW:<root>[:m=k]".
SparseOperator generator_by_id(const FockBasis& basis, const std::string& id, bool deformed);

/// Header `dim nnz`, then `row col re im` per entry, 1-based, %.17g.
void write_operator(std::ostream& os, const SparseOperator& op);
std::string format_operator(const SparseOperator& op);
SparseOperator read_operator(std::istream& is);

/// One line per relation: suite, id, equation tag, summary.
std::string catalog_text();

/// Whole command line. Returns the process exit code; never throws.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace qsuper
