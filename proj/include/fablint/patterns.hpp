#pragma once

#include <array>
#include <set>
#include <vector>

#include "fablint/model.hpp"

namespace fablint {

struct PatternDescriptor {
    PatternId id;
    Category category;
    std::string_view title;
    Level default_level;
    bool enabled = true;
};

/// The twelve registered patterns, in catalog order. Category assignment
/// follows each problem's discussion: compose syntax is a functionality
/// problem and complex policies a performance problem.
const std::array<PatternDescriptor, kPatternCount>& pattern_catalog();

const PatternDescriptor& descriptor(PatternId id);

std::set<PatternId> all_patterns_enabled();

/// Runs every enabled pattern over the model, appends the model's own
/// parse findings (also subject to the enabled set), and sorts the result
/// by (file, line, pattern). A pattern that throws contributes a single
/// Error-level "pattern failure" finding instead of aborting the run.
std::vector<Finding> run_all(const NetworkModel& model,
                             const ThresholdConfig& thresholds,
                             const std::set<PatternId>& enabled);

std::vector<Finding> check_state_db_choice(const NetworkModel& model);
std::vector<Finding> check_inconsistent_params(const NetworkModel& model);
std::vector<Finding> check_hardcoded(const NetworkModel& model);
std::vector<Finding> check_component_missing(const NetworkModel& model);
std::vector<Finding> check_block_params(const NetworkModel& model,
                                        const ThresholdConfig& thresholds);
std::vector<Finding> check_policy_patterns(const NetworkModel& model,
                                           const ThresholdConfig& thresholds);
std::vector<Finding> check_tls(const NetworkModel& model);
std::vector<Finding> check_state_db_security(const NetworkModel& model);
std::vector<Finding> check_consensus(const NetworkModel& model);

}  // namespace fablint
