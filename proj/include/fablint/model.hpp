#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fablint/policy.hpp"

namespace fablint {

/// Position of a construct inside one of the network's configuration files.
/// Lines and columns are 1-based; a column is only meaningful with a line.
struct SourceLocation {
    std::string file;
    std::optional<int> line;
    std::optional<int> column;

    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

enum class Level { Info, Warning, Error };
enum class Category { Functionality, Performance, Security };

std::string_view to_string(Level level);
std::string_view to_string(Category category);
std::optional<Level> level_from_string(std::string_view text);
std::optional<Category> category_from_string(std::string_view text);

/// The twelve check patterns, in catalog (report table) order.
enum class PatternId {
    StateDbChoice,
    InconsistentParams,
    ParamHardcoded,
    ComponentMissing,
    YamlSyntax,
    ComposeSyntax,
    BlockParams,
    ComplexPolicy,
    SimplePolicy,
    TlsOnOff,
    StateDbSecurity,
    ConsensusMechanism,
};

inline constexpr int kPatternCount = 12;

/// All pattern ids in catalog order.
const std::vector<PatternId>& all_patterns();

/// Machine-readable identifier, e.g. "tls_onoff". Stable; used in JSON and config files.
std::string_view pattern_key(PatternId id);

/// Human-readable title, e.g. "TLS on/off". Used in text reports and the corpus table.
std::string_view pattern_title(PatternId id);

std::optional<PatternId> pattern_from_key(std::string_view key);

/// One detected reasonableness problem.
struct Finding {
    Category category;
    std::string type;
    std::string message;
    SourceLocation location;
    std::string recommendation;
    PatternId pattern;
    Level level;

    friend bool operator==(const Finding&, const Finding&) = default;
};

/// An environment value as written in a compose file. `resolved` is the
/// value after `${VAR}` interpolation; absent when a reference could not
/// be resolved from the host environment.
struct EnvValue {
    std::string raw;
    std::optional<std::string> resolved;
    bool is_literal = true;

    /// Best-known value: resolved if available, else the raw text.
    const std::string& effective() const { return resolved ? *resolved : raw; }

    friend bool operator==(const EnvValue&, const EnvValue&) = default;
};

/// An organization as declared in crypto-config.yaml, possibly enriched
/// with the MSP id declared for the same name in configtx.yaml.
struct OrgSpec {
    std::string name;
    std::string domain;
    std::optional<std::string> msp_id;
    std::vector<std::string> peer_hostnames;
    std::optional<int> template_count;
    std::optional<int> user_count;
    SourceLocation location;
};

/// One service entry of a docker-compose document.
struct ContainerSpec {
    std::string service_key;
    std::optional<std::string> container_name;
    std::optional<std::string> image;
    std::vector<std::pair<std::string, EnvValue>> env;
    std::optional<std::string> command;
    std::vector<std::string> volumes;
    std::vector<std::string> depends_on;
    SourceLocation location;

    const EnvValue* env_value(std::string_view key) const;
    /// container_name when declared, service key otherwise.
    const std::string& display_name() const {
        return container_name ? *container_name : service_key;
    }
};

enum class ConsensusType { Solo, Kafka, EtcdRaft, Unknown };

std::string_view to_string(ConsensusType type);

/// Ordering-service settings read from configtx.yaml.
struct OrdererConfig {
    ConsensusType consensus_type = ConsensusType::Unknown;
    std::optional<std::int64_t> batch_timeout_ms;
    std::optional<std::int64_t> max_message_count;
    std::optional<std::int64_t> absolute_max_bytes;
    std::optional<std::int64_t> preferred_max_bytes;
    std::vector<std::string> orderer_addresses;
    SourceLocation location;
};

enum class StateDbKind { LevelDb, CouchDb };

/// State database selection of one peer container. LevelDB is the
/// default when no selector env var is present.
struct StateDbConfig {
    StateDbKind kind = StateDbKind::LevelDb;
    std::optional<std::string> couch_address;
    std::optional<EnvValue> peer_username;
    std::optional<EnvValue> peer_password;
    std::string owning_peer;
    SourceLocation location;
};

/// A chaincode as deployed by the bootstrap scripts.
struct ChaincodeDeployment {
    std::string name;
    std::optional<std::string> channel;
    std::optional<std::string> policy_raw;
    std::optional<PolicyAst> policy;
    std::vector<std::string> install_targets;
    SourceLocation location;
};

/// A channel created by the bootstrap scripts.
struct ChannelSpec {
    std::string name;
    std::vector<std::string> member_orgs;
    std::vector<std::string> anchor_update_orgs;
    SourceLocation location;
};

enum class FileRole { CryptoConfig, Configtx, Compose, StartScript, ChannelScript };

std::string_view to_string(FileRole role);

using SourcesMap = std::map<FileRole, std::vector<std::string>>;

/// Organization declaration from configtx.yaml (Name/ID pair).
struct ConfigtxOrg {
    std::string name;
    std::optional<std::string> msp_id;
    SourceLocation location;
};

/// Tunable judgment bounds. The paper leaves the concrete numbers open;
/// these defaults are overridable via the CLI config file.
struct ThresholdConfig {
    int batch_timeout_min_ms = 200;
    int batch_timeout_max_ms = 10000;
    int max_message_count_min = 10;
    int max_message_count_max = 500;
    int complex_min_signers = 4;
    int complex_max_depth = 3;

    /// Empty string when valid; otherwise names the violated bound.
    std::string validate() const;
};

/// Everything the per-file parsers produced for one network, before
/// cross-referencing.
struct ParsedSources {
    SourcesMap files;
    std::vector<OrgSpec> crypto_orgs;
    bool crypto_present_but_empty = false;
    std::optional<OrdererConfig> orderer;
    std::vector<ConfigtxOrg> configtx_orgs;
    std::vector<ContainerSpec> containers;
    std::vector<ChannelSpec> channels;
    std::vector<ChaincodeDeployment> chaincodes;
    std::vector<std::string> declared_channel_ids;
    std::vector<Finding> findings;
};

/// The merged, cross-referenced view of one network. Immutable after
/// merge_sources; safe to share across concurrent readers.
struct NetworkModel {
    std::vector<OrgSpec> orgs;
    std::vector<ContainerSpec> containers;
    std::optional<OrdererConfig> orderer;
    std::vector<StateDbConfig> state_dbs;
    std::vector<ChannelSpec> channels;
    std::vector<ChaincodeDeployment> chaincodes;
    std::vector<Finding> parse_findings;
    SourcesMap sources;

    // Cross-file reference data consumed by the consistency patterns.
    std::vector<ConfigtxOrg> configtx_orgs;
    std::vector<std::string> declared_channel_ids;
    bool crypto_present_but_empty = false;

    const ContainerSpec* container_by_name(std::string_view name) const;
};

/// Merges per-file fragments into one model. Absent roles degrade the
/// dependent patterns instead of failing. Endorsement policies are parsed
/// here; unparsable texts leave `policy` absent with `policy_raw` kept.
NetworkModel merge_sources(const ParsedSources& sources);

// Compose env selector keys for the state database (Fabric v1.4 names).
inline constexpr std::string_view kStateDbSelectorKey = "CORE_LEDGER_STATE_STATEDATABASE";
inline constexpr std::string_view kCouchAddressKey = "CORE_LEDGER_STATE_COUCHDBCONFIG_COUCHDBADDRESS";
inline constexpr std::string_view kCouchUsernameKey = "CORE_LEDGER_STATE_COUCHDBCONFIG_USERNAME";
inline constexpr std::string_view kCouchPasswordKey = "CORE_LEDGER_STATE_COUCHDBCONFIG_PASSWORD";

}  // namespace fablint
