#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fablint/model.hpp"

namespace fablint {

enum class ReportFormat { Text, Json };
enum class FailOn { Error, Warning, Never };

/// Explicit file-role assignments that beat filename discovery.
struct FileOverrides {
    std::vector<std::string> compose;
    std::optional<std::string> crypto;
    std::optional<std::string> configtx;
    std::vector<std::string> scripts;
};

struct ScanOptions {
    std::string network_dir;
    ReportFormat format = ReportFormat::Text;
    std::optional<std::string> config_path;
    std::optional<std::string> output_path;
    FailOn fail_on = FailOn::Error;
    FileOverrides overrides;
    std::map<std::string, std::string> host_env;
};

/// Assigns file roles by the usual Fabric naming conventions, searching
/// up to three directory levels deep. Paths are relative to network_dir
/// and sorted for determinism.
SourcesMap discover_files(const std::string& network_dir);

/// Thresholds plus pattern disable set loaded from the config file.
struct LintConfig {
    ThresholdConfig thresholds;
    std::set<PatternId> disabled;
};

/// Error alternative names the offending key or syntax problem.
std::variant<LintConfig, std::string> load_threshold_config(const std::string& path);

struct ScanResult {
    NetworkModel model;
    std::vector<Finding> findings;
};

/// Parses, merges and lints one network directory.
ScanResult scan_network(const std::string& network_dir, const LintConfig& config,
                        const std::map<std::string, std::string>& host_env,
                        const FileOverrides& overrides = {});

/// Full scan command: writes the report, returns the process exit code
/// (0 clean, 1 findings at/above fail_on, 2 internal error).
int run_scan(const ScanOptions& options);

/// Corpus command over the immediate subdirectories of root. Reports,
/// never gates: exits 0 unless an internal error occurs.
int run_corpus(const ScanOptions& options);

}  // namespace fablint
