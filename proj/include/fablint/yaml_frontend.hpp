#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fablint/model.hpp"

namespace fablint {

/// Generic YAML tree with per-node source positions.
struct YamlNode {
    enum class Kind { Null, Scalar, Mapping, Sequence };

    Kind kind = Kind::Null;
    std::string scalar;                                      // Kind::Scalar
    std::vector<std::pair<std::string, YamlNode>> entries;   // Kind::Mapping, in document order
    std::vector<YamlNode> items;                             // Kind::Sequence
    SourceLocation location;

    const YamlNode* find(std::string_view key) const;
    /// Scalar text of a mapping entry, or nullopt when missing / not a scalar.
    std::optional<std::string> scalar_at(std::string_view key) const;
};

struct DocumentTree {
    YamlNode root;
    std::string path;
};

/// Either a parsed tree or exactly one Error-level yaml_syntax finding.
struct YamlParseResult {
    std::optional<DocumentTree> tree;
    std::optional<Finding> finding;
};

/// Parses one YAML document. Invalid UTF-8 and syntax failures become the
/// finding, located at the first offending line.
YamlParseResult parse_yaml(std::string_view text, const std::string& path);

/// Organizations under PeerOrgs and OrdererOrgs. `empty_note` is set when
/// the document has neither section (component-missing candidate).
struct CryptoFragment {
    std::vector<OrgSpec> orgs;
    bool empty_note = false;
};

CryptoFragment parse_crypto_config(const DocumentTree& tree);

struct ConfigtxFragment {
    OrdererConfig orderer;
    std::vector<ConfigtxOrg> orgs;
    std::vector<Finding> findings;
};

ConfigtxFragment parse_configtx(const DocumentTree& tree);

struct ComposeFragment {
    std::vector<ContainerSpec> containers;
    std::vector<Finding> findings;
};

/// Parses one compose document against the schema subset the patterns
/// consume. Env values are interpolated against host_env.
ComposeFragment parse_compose(const DocumentTree& tree,
                              const std::map<std::string, std::string>& host_env);

/// Parses several compose documents; later documents override earlier
/// service keys. Pass documents in file-name lexicographic order.
ComposeFragment parse_compose_files(std::span<const DocumentTree> trees,
                                    const std::map<std::string, std::string>& host_env);

/// Builds an EnvValue, resolving `${VAR}` / `${VAR:-default}` references.
EnvValue interpolate_env(std::string raw,
                         const std::map<std::string, std::string>& host_env);

/// Normalizes duration text ("2s", "500ms", "1m") to milliseconds.
std::optional<std::int64_t> parse_duration_ms(std::string_view text);

/// Normalizes byte-size text ("99 MB", "512 KB", "1024") to bytes.
std::optional<std::int64_t> parse_byte_size(std::string_view text);

}  // namespace fablint
