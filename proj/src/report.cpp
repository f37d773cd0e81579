#include "fablint/report.hpp"

#include <sstream>

#include <json.hpp>

namespace fablint {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json finding_to_json(const Finding& finding) {
    ordered_json entry;
    entry["category"] = to_string(finding.category);
    entry["type"] = finding.type;
    entry["message"] = finding.message;
    entry["file"] = finding.location.file;
    if (finding.location.line) entry["line"] = *finding.location.line;
    entry["recommendation"] = finding.recommendation;
    entry["pattern"] = pattern_key(finding.pattern);
    entry["level"] = to_string(finding.level);
    return entry;
}

}  // namespace

LevelCounts count_levels(const std::vector<Finding>& findings) {
    LevelCounts counts;
    for (const auto& finding : findings) {
        switch (finding.level) {
            case Level::Error: ++counts.error; break;
            case Level::Warning: ++counts.warning; break;
            case Level::Info: ++counts.info; break;
        }
    }
    return counts;
}

std::string render_text(const std::vector<Finding>& findings) {
    std::ostringstream out;
    for (const auto& finding : findings) {
        out << to_string(finding.category) << '\n'
            << "type: " << finding.type << '\n'
            << "message: " << finding.message << '\n'
            << "file: " << finding.location.file << '\n'
            << "recommendation: " << finding.recommendation << '\n'
            << "pattern: " << pattern_title(finding.pattern) << '\n'
            << "level: " << to_string(finding.level) << '\n'
            << '\n';
    }
    LevelCounts counts = count_levels(findings);
    out << counts.error << " Error, " << counts.warning << " Warning, "
        << counts.info << " Info\n";
    return out.str();
}

std::string render_json(const std::vector<Finding>& findings) {
    ordered_json doc;
    doc["version"] = "1";
    doc["findings"] = ordered_json::array();
    for (const auto& finding : findings)
        doc["findings"].push_back(finding_to_json(finding));
    LevelCounts counts = count_levels(findings);
    doc["summary"] = {{"error", counts.error},
                      {"warning", counts.warning},
                      {"info", counts.info}};
    return doc.dump(2) + "\n";
}

std::vector<Finding> findings_from_json(const std::string& text) {
    std::vector<Finding> findings;
    ordered_json doc = ordered_json::parse(text);
    for (const auto& entry : doc.at("findings")) {
        Finding finding;
        finding.category =
            category_from_string(entry.at("category").get<std::string>())
                .value_or(Category::Functionality);
        finding.type = entry.at("type").get<std::string>();
        finding.message = entry.at("message").get<std::string>();
        finding.location.file = entry.at("file").get<std::string>();
        if (entry.contains("line")) finding.location.line = entry["line"].get<int>();
        finding.recommendation = entry.at("recommendation").get<std::string>();
        finding.pattern = pattern_from_key(entry.at("pattern").get<std::string>())
                              .value_or(PatternId::YamlSyntax);
        finding.level = level_from_string(entry.at("level").get<std::string>())
                            .value_or(Level::Info);
        findings.push_back(std::move(finding));
    }
    return findings;
}

CorpusSummary aggregate(
    const std::vector<std::pair<std::string, std::vector<Finding>>>& networks) {
    CorpusSummary summary;
    for (PatternId id : all_patterns()) summary.per_pattern[id] = 0;
    for (const auto& [name, findings] : networks) {
        std::map<PatternId, int> per_pattern;
        for (PatternId id : all_patterns()) per_pattern[id] = 0;
        for (const auto& finding : findings) {
            ++per_pattern[finding.pattern];
            ++summary.per_pattern[finding.pattern];
            ++summary.total;
        }
        summary.per_network[name] = {static_cast<int>(findings.size()),
                                     std::move(per_pattern)};
    }
    return summary;
}

std::string render_corpus_text(const CorpusSummary& summary) {
    std::ostringstream out;
    out << "Patterns\tResult count\n";
    for (PatternId id : all_patterns())
        out << pattern_title(id) << '\t' << summary.per_pattern.at(id) << '\n';
    out << "Total\t" << summary.total << '\n';
    out << '\n';
    out << "Network\tFindings\n";
    for (const auto& [name, entry] : summary.per_network)
        out << name << '\t' << entry.first << '\n';
    return out.str();
}

std::string render_corpus_json(const CorpusSummary& summary) {
    ordered_json doc;
    doc["version"] = "1";
    doc["patterns"] = ordered_json::array();
    for (PatternId id : all_patterns()) {
        ordered_json row;
        row["pattern"] = pattern_key(id);
        row["title"] = pattern_title(id);
        row["count"] = summary.per_pattern.at(id);
        doc["patterns"].push_back(row);
    }
    doc["networks"] = ordered_json::object();
    for (const auto& [name, entry] : summary.per_network) {
        ordered_json network;
        network["total"] = entry.first;
        ordered_json per_pattern = ordered_json::object();
        for (PatternId id : all_patterns())
            per_pattern[std::string(pattern_key(id))] = entry.second.at(id);
        network["per_pattern"] = std::move(per_pattern);
        doc["networks"][name] = std::move(network);
    }
    doc["total"] = summary.total;
    return doc.dump(2) + "\n";
}

}  // namespace fablint
