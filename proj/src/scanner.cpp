#include "fablint/scanner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fablint/patterns.hpp"
#include "fablint/report.hpp"
#include "fablint/script_extractor.hpp"
#include "fablint/yaml_frontend.hpp"

namespace fs = std::filesystem;

namespace fablint {
namespace {

bool has_extension(const std::string& name, std::string_view ext) {
    return name.size() > ext.size() &&
           name.compare(name.size() - ext.size(), ext.size(), ext) == 0;
}

bool is_yaml(const std::string& name) {
    return has_extension(name, ".yaml") || has_extension(name, ".yml");
}

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct LoadedYaml {
    std::vector<DocumentTree> trees;
    std::vector<Finding> findings;
};

LoadedYaml load_yaml_files(const fs::path& base,
                           const std::vector<std::string>& relative_paths) {
    LoadedYaml loaded;
    for (const auto& rel : relative_paths) {
        auto text = read_file(base / rel);
        if (!text) continue;
        YamlParseResult result = parse_yaml(*text, rel);
        if (result.finding) loaded.findings.push_back(*result.finding);
        if (result.tree) loaded.trees.push_back(std::move(*result.tree));
    }
    return loaded;
}

}  // namespace

SourcesMap discover_files(const std::string& network_dir) {
    SourcesMap sources;
    fs::path root(network_dir);
    std::error_code ec;

    std::vector<std::string> top_scripts;
    auto iter = fs::recursive_directory_iterator(root, ec);
    if (ec) return sources;
    for (auto it = fs::begin(iter); it != fs::end(iter); it.increment(ec)) {
        if (ec) break;
        if (it.depth() >= 3) {  // cap the search at three directory levels
            it.disable_recursion_pending();
            continue;
        }
        if (!it->is_regular_file(ec)) continue;
        const fs::path& path = it->path();
        std::string name = path.filename().string();
        std::string rel = fs::relative(path, root, ec).generic_string();

        if (is_yaml(name)) {
            if (name.rfind("crypto-config", 0) == 0)
                sources[FileRole::CryptoConfig].push_back(rel);
            else if (name.rfind("configtx", 0) == 0)
                sources[FileRole::Configtx].push_back(rel);
            else if (name.rfind("docker-compose", 0) == 0)
                sources[FileRole::Compose].push_back(rel);
        } else if (has_extension(name, ".sh")) {
            if (it.depth() == 0)
                top_scripts.push_back(rel);
            else if (path.parent_path().filename() == "scripts")
                sources[FileRole::ChannelScript].push_back(rel);
        }
    }

    // start.sh and byfn.sh take precedence among top-level scripts.
    std::sort(top_scripts.begin(), top_scripts.end(),
              [](const std::string& a, const std::string& b) {
                  auto rank = [](const std::string& s) {
                      if (s == "start.sh") return 0;
                      if (s == "byfn.sh") return 1;
                      return 2;
                  };
                  return rank(a) != rank(b) ? rank(a) < rank(b) : a < b;
              });
    if (!top_scripts.empty()) sources[FileRole::StartScript] = std::move(top_scripts);

    for (auto& [role, paths] : sources)
        if (role != FileRole::StartScript) std::sort(paths.begin(), paths.end());
    return sources;
}

std::variant<LintConfig, std::string> load_threshold_config(
    const std::string& path) {
    LintConfig config;
    auto text = read_file(path);
    if (!text) return "config file unreadable: " + path;

    YamlParseResult parsed = parse_yaml(*text, path);
    if (!parsed.tree) return "config file is not valid Yaml: " + path;
    const YamlNode& root = parsed.tree->root;
    if (root.kind == YamlNode::Kind::Null) return config;
    if (root.kind != YamlNode::Kind::Mapping)
        return "config file must be a Yaml mapping: " + path;

    for (const auto& [key, value] : root.entries) {
        auto read_int = [&](int& target) -> std::optional<std::string> {
            try {
                target = std::stoi(value.scalar);
            } catch (...) {
                return "config key '" + key + "' must be an integer";
            }
            return std::nullopt;
        };
        std::optional<std::string> error;
        if (key == "batch_timeout_min_ms")
            error = read_int(config.thresholds.batch_timeout_min_ms);
        else if (key == "batch_timeout_max_ms")
            error = read_int(config.thresholds.batch_timeout_max_ms);
        else if (key == "max_message_count_min")
            error = read_int(config.thresholds.max_message_count_min);
        else if (key == "max_message_count_max")
            error = read_int(config.thresholds.max_message_count_max);
        else if (key == "complex_min_signers")
            error = read_int(config.thresholds.complex_min_signers);
        else if (key == "complex_max_depth")
            error = read_int(config.thresholds.complex_max_depth);
        else if (key == "disable") {
            for (const auto& item : value.items) {
                auto id = pattern_from_key(item.scalar);
                if (!id) return "unknown pattern id in disable list: " + item.scalar;
                config.disabled.insert(*id);
            }
        } else {
            return "unknown config key: " + key;
        }
        if (error) return *error;
    }

    if (std::string bad = config.thresholds.validate(); !bad.empty())
        return "invalid threshold bounds at key: " + bad;
    return config;
}

ScanResult scan_network(const std::string& network_dir, const LintConfig& config,
                        const std::map<std::string, std::string>& host_env,
                        const FileOverrides& overrides) {
    SourcesMap sources = discover_files(network_dir);
    if (overrides.crypto) sources[FileRole::CryptoConfig] = {*overrides.crypto};
    if (overrides.configtx) sources[FileRole::Configtx] = {*overrides.configtx};
    if (!overrides.compose.empty()) sources[FileRole::Compose] = overrides.compose;
    if (!overrides.scripts.empty()) {
        sources[FileRole::StartScript] = overrides.scripts;
        sources.erase(FileRole::ChannelScript);
    }

    fs::path base(network_dir);
    ParsedSources parsed;
    // Only roles whose files were actually readable count as present.
    for (auto& [role, paths] : sources) {
        std::vector<std::string> readable;
        for (const auto& rel : paths)
            if (fs::exists(base / rel)) readable.push_back(rel);
        if (!readable.empty()) parsed.files[role] = readable;
    }

    if (auto it = parsed.files.find(FileRole::CryptoConfig);
        it != parsed.files.end()) {
        LoadedYaml loaded = load_yaml_files(base, {it->second.front()});
        parsed.findings.insert(parsed.findings.end(), loaded.findings.begin(),
                               loaded.findings.end());
        if (!loaded.trees.empty()) {
            CryptoFragment fragment = parse_crypto_config(loaded.trees.front());
            parsed.crypto_orgs = std::move(fragment.orgs);
            parsed.crypto_present_but_empty = fragment.empty_note;
        }
    }

    if (auto it = parsed.files.find(FileRole::Configtx); it != parsed.files.end()) {
        LoadedYaml loaded = load_yaml_files(base, {it->second.front()});
        parsed.findings.insert(parsed.findings.end(), loaded.findings.begin(),
                               loaded.findings.end());
        if (!loaded.trees.empty()) {
            ConfigtxFragment fragment = parse_configtx(loaded.trees.front());
            parsed.orderer = std::move(fragment.orderer);
            parsed.configtx_orgs = std::move(fragment.orgs);
            parsed.findings.insert(parsed.findings.end(),
                                   fragment.findings.begin(),
                                   fragment.findings.end());
        }
    }

    if (auto it = parsed.files.find(FileRole::Compose); it != parsed.files.end()) {
        LoadedYaml loaded = load_yaml_files(base, it->second);
        parsed.findings.insert(parsed.findings.end(), loaded.findings.begin(),
                               loaded.findings.end());
        ComposeFragment fragment = parse_compose_files(loaded.trees, host_env);
        parsed.containers = std::move(fragment.containers);
        parsed.findings.insert(parsed.findings.end(), fragment.findings.begin(),
                               fragment.findings.end());
    }

    std::vector<CommandInvocation> invocations;
    for (FileRole role : {FileRole::StartScript, FileRole::ChannelScript}) {
        auto it = parsed.files.find(role);
        if (it == parsed.files.end()) continue;
        for (const auto& rel : it->second) {
            auto text = read_file(base / rel);
            if (!text) continue;
            ScriptExtraction extraction = extract_commands(*text, rel);
            auto deployments =
                extract_chaincode_deployments(extraction.invocations, rel);
            parsed.chaincodes.insert(parsed.chaincodes.end(), deployments.begin(),
                                     deployments.end());
            ChannelOps ops = extract_channel_ops(extraction.invocations, rel);
            for (auto& channel : ops.channels) {
                auto existing = std::find_if(
                    parsed.channels.begin(), parsed.channels.end(),
                    [&](const ChannelSpec& c) { return c.name == channel.name; });
                if (existing == parsed.channels.end()) {
                    parsed.channels.push_back(std::move(channel));
                } else {
                    for (const auto& org : channel.member_orgs)
                        if (std::find(existing->member_orgs.begin(),
                                      existing->member_orgs.end(),
                                      org) == existing->member_orgs.end())
                            existing->member_orgs.push_back(org);
                    for (const auto& org : channel.anchor_update_orgs)
                        if (std::find(existing->anchor_update_orgs.begin(),
                                      existing->anchor_update_orgs.end(),
                                      org) == existing->anchor_update_orgs.end())
                            existing->anchor_update_orgs.push_back(org);
                }
            }
            for (auto& id : ops.declared_channel_ids)
                if (std::find(parsed.declared_channel_ids.begin(),
                              parsed.declared_channel_ids.end(),
                              id) == parsed.declared_channel_ids.end())
                    parsed.declared_channel_ids.push_back(id);
        }
    }

    ScanResult result;
    result.model = merge_sources(parsed);

    std::set<PatternId> enabled = all_patterns_enabled();
    for (PatternId id : config.disabled) enabled.erase(id);
    result.findings = run_all(result.model, config.thresholds, enabled);
    return result;
}

namespace {

LintConfig load_config_or_default(const ScanOptions& options, int& exit_code) {
    exit_code = 0;
    if (!options.config_path) return LintConfig{};
    auto loaded = load_threshold_config(*options.config_path);
    if (auto* error = std::get_if<std::string>(&loaded)) {
        std::cerr << "fabriclint: " << *error << "\n";
        exit_code = 2;
        return LintConfig{};
    }
    return std::get<LintConfig>(loaded);
}

bool write_report(const ScanOptions& options, const std::string& report) {
    if (!options.output_path) {
        std::cout << report;
        return true;
    }
    std::ofstream out(*options.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "fabriclint: cannot write " << *options.output_path << "\n";
        return false;
    }
    out << report;
    return out.good();
}

bool findings_gate(const std::vector<Finding>& findings, FailOn fail_on) {
    if (fail_on == FailOn::Never) return false;
    Level bar = fail_on == FailOn::Error ? Level::Error : Level::Warning;
    return std::any_of(findings.begin(), findings.end(),
                       [&](const Finding& f) { return f.level >= bar; });
}

}  // namespace

int run_scan(const ScanOptions& options) {
    std::error_code ec;
    if (!fs::is_directory(options.network_dir, ec)) {
        std::cerr << "fabriclint: not a directory: " << options.network_dir << "\n";
        return 2;
    }

    int config_exit = 0;
    LintConfig config = load_config_or_default(options, config_exit);
    if (config_exit != 0) return config_exit;

    ScanResult result =
        scan_network(options.network_dir, config, options.host_env, options.overrides);

    std::string report = options.format == ReportFormat::Json
                             ? render_json(result.findings)
                             : render_text(result.findings);
    if (!write_report(options, report)) return 2;
    return findings_gate(result.findings, options.fail_on) ? 1 : 0;
}

int run_corpus(const ScanOptions& options) {
    std::error_code ec;
    if (!fs::is_directory(options.network_dir, ec)) {
        std::cerr << "fabriclint: not a directory: " << options.network_dir << "\n";
        return 2;
    }

    int config_exit = 0;
    LintConfig config = load_config_or_default(options, config_exit);
    if (config_exit != 0) return config_exit;

    std::vector<std::string> networks;
    for (const auto& entry : fs::directory_iterator(options.network_dir, ec))
        if (entry.is_directory()) networks.push_back(entry.path().filename().string());
    std::sort(networks.begin(), networks.end());

    std::vector<std::pair<std::string, std::vector<Finding>>> per_network;
    for (const auto& name : networks) {
        try {
            ScanResult result =
                scan_network((fs::path(options.network_dir) / name).string(),
                             config, options.host_env);
            per_network.emplace_back(name, std::move(result.findings));
        } catch (const std::exception& e) {
            Finding failure;
            failure.category = Category::Functionality;
            failure.type = "pattern failure";
            failure.message = std::string("network could not be scanned: ") + e.what();
            failure.location.file = name;
            failure.recommendation = "Report this as a bug in the linter!";
            failure.pattern = PatternId::YamlSyntax;
            failure.level = Level::Error;
            per_network.emplace_back(name, std::vector<Finding>{failure});
        }
    }

    CorpusSummary summary = aggregate(per_network);
    std::string report = options.format == ReportFormat::Json
                             ? render_corpus_json(summary)
                             : render_corpus_text(summary);
    if (!write_report(options, report)) return 2;
    return 0;
}

}  // namespace fablint
