#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fablint/model.hpp"

namespace fablint {

/// Per-pattern finding counts across many networks.
struct CorpusSummary {
    std::map<PatternId, int> per_pattern;
    /// network name -> (total findings, per-pattern counts)
    std::map<std::string, std::pair<int, std::map<PatternId, int>>> per_network;
    int total = 0;
};

struct LevelCounts {
    int error = 0;
    int warning = 0;
    int info = 0;
};

LevelCounts count_levels(const std::vector<Finding>& findings);

/// Human-readable report: one block per finding (category heading, then
/// type/message/file/recommendation/pattern/level lines) and a trailing
/// per-level summary line.
std::string render_text(const std::vector<Finding>& findings);

/// Machine-readable report, schema version "1". Key order is fixed; the
/// line key is omitted when the finding has no line.
std::string render_json(const std::vector<Finding>& findings);

/// Inverse of render_json, for report consumers and round-trip checks.
std::vector<Finding> findings_from_json(const std::string& text);

CorpusSummary aggregate(
    const std::vector<std::pair<std::string, std::vector<Finding>>>& networks);

/// Two-column per-pattern table in catalog order, plus per-network totals.
std::string render_corpus_text(const CorpusSummary& summary);

std::string render_corpus_json(const CorpusSummary& summary);

}  // namespace fablint
