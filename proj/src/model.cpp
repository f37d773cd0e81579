#include "fablint/model.hpp"

#include <algorithm>
#include <cctype>

namespace fablint {
namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

bool env_selects_couchdb(const ContainerSpec& container) {
    const EnvValue* selector = container.env_value(kStateDbSelectorKey);
    return selector && iequals(selector->effective(), "couchdb");
}

bool is_peer_image(const ContainerSpec& container) {
    return container.image &&
           container.image->find("fabric-peer") != std::string::npos;
}

StateDbConfig state_db_for(const ContainerSpec& container) {
    StateDbConfig db;
    db.owning_peer = container.service_key;
    db.location = container.location;
    if (env_selects_couchdb(container)) {
        db.kind = StateDbKind::CouchDb;
        if (const EnvValue* addr = container.env_value(kCouchAddressKey))
            db.couch_address = addr->effective();
        if (const EnvValue* user = container.env_value(kCouchUsernameKey))
            db.peer_username = *user;
        if (const EnvValue* pass = container.env_value(kCouchPasswordKey))
            db.peer_password = *pass;
    }
    return db;
}

}  // namespace

std::string_view to_string(Level level) {
    switch (level) {
        case Level::Info: return "Info";
        case Level::Warning: return "Warning";
        case Level::Error: return "Error";
    }
    return "Info";
}

std::string_view to_string(Category category) {
    switch (category) {
        case Category::Functionality: return "Functionality";
        case Category::Performance: return "Performance";
        case Category::Security: return "Security";
    }
    return "Functionality";
}

std::optional<Level> level_from_string(std::string_view text) {
    if (text == "Info") return Level::Info;
    if (text == "Warning") return Level::Warning;
    if (text == "Error") return Level::Error;
    return std::nullopt;
}

std::optional<Category> category_from_string(std::string_view text) {
    if (text == "Functionality") return Category::Functionality;
    if (text == "Performance") return Category::Performance;
    if (text == "Security") return Category::Security;
    return std::nullopt;
}

std::string_view to_string(ConsensusType type) {
    switch (type) {
        case ConsensusType::Solo: return "solo";
        case ConsensusType::Kafka: return "kafka";
        case ConsensusType::EtcdRaft: return "etcdraft";
        case ConsensusType::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(FileRole role) {
    switch (role) {
        case FileRole::CryptoConfig: return "crypto_config";
        case FileRole::Configtx: return "configtx";
        case FileRole::Compose: return "compose";
        case FileRole::StartScript: return "start_script";
        case FileRole::ChannelScript: return "channel_script";
    }
    return "compose";
}

const std::vector<PatternId>& all_patterns() {
    static const std::vector<PatternId> ids = {
        PatternId::StateDbChoice,      PatternId::InconsistentParams,
        PatternId::ParamHardcoded,     PatternId::ComponentMissing,
        PatternId::YamlSyntax,         PatternId::ComposeSyntax,
        PatternId::BlockParams,        PatternId::ComplexPolicy,
        PatternId::SimplePolicy,       PatternId::TlsOnOff,
        PatternId::StateDbSecurity,    PatternId::ConsensusMechanism,
    };
    return ids;
}

std::string_view pattern_key(PatternId id) {
    switch (id) {
        case PatternId::StateDbChoice: return "state_db_choice";
        case PatternId::InconsistentParams: return "inconsistent_params";
        case PatternId::ParamHardcoded: return "param_hardcoded";
        case PatternId::ComponentMissing: return "component_missing";
        case PatternId::YamlSyntax: return "yaml_syntax";
        case PatternId::ComposeSyntax: return "compose_syntax";
        case PatternId::BlockParams: return "block_params";
        case PatternId::ComplexPolicy: return "complex_policy";
        case PatternId::SimplePolicy: return "simple_policy";
        case PatternId::TlsOnOff: return "tls_onoff";
        case PatternId::StateDbSecurity: return "state_db_security";
        case PatternId::ConsensusMechanism: return "consensus_mechanism";
    }
    return "";
}

std::string_view pattern_title(PatternId id) {
    switch (id) {
        case PatternId::StateDbChoice: return "State database choice";
        case PatternId::InconsistentParams: return "Inconsistent parameters";
        case PatternId::ParamHardcoded: return "Parameter hardcoded";
        case PatternId::ComponentMissing: return "Component missing";
        case PatternId::YamlSyntax: return "Yaml syntax";
        case PatternId::ComposeSyntax: return "Docker compose file syntax";
        case PatternId::BlockParams: return "BlockTime / BlockSize";
        case PatternId::ComplexPolicy: return "Complex chaincode endorsement policy";
        case PatternId::SimplePolicy: return "Simple chaincode endorsement policy";
        case PatternId::TlsOnOff: return "TLS on/off";
        case PatternId::StateDbSecurity: return "State database security";
        case PatternId::ConsensusMechanism: return "Consensus mechanism";
    }
    return "";
}

std::optional<PatternId> pattern_from_key(std::string_view key) {
    for (PatternId id : all_patterns())
        if (pattern_key(id) == key) return id;
    return std::nullopt;
}

const EnvValue* ContainerSpec::env_value(std::string_view key) const {
    for (const auto& [name, value] : env)
        if (name == key) return &value;
    return nullptr;
}

std::string ThresholdConfig::validate() const {
    if (batch_timeout_min_ms <= 0) return "batch_timeout_min_ms";
    if (batch_timeout_max_ms <= batch_timeout_min_ms) return "batch_timeout_max_ms";
    if (max_message_count_min <= 0) return "max_message_count_min";
    if (max_message_count_max <= max_message_count_min) return "max_message_count_max";
    if (complex_min_signers <= 0) return "complex_min_signers";
    if (complex_max_depth <= 0) return "complex_max_depth";
    return "";
}

const ContainerSpec* NetworkModel::container_by_name(std::string_view name) const {
    for (const auto& container : containers) {
        if (container.service_key == name) return &container;
        if (container.container_name && *container.container_name == name)
            return &container;
    }
    return nullptr;
}

NetworkModel merge_sources(const ParsedSources& sources) {
    NetworkModel model;
    model.sources = sources.files;
    model.orgs = sources.crypto_orgs;
    model.crypto_present_but_empty = sources.crypto_present_but_empty;
    model.orderer = sources.orderer;
    model.configtx_orgs = sources.configtx_orgs;
    model.containers = sources.containers;
    model.channels = sources.channels;
    model.declared_channel_ids = sources.declared_channel_ids;
    model.parse_findings = sources.findings;

    // Attach configtx MSP ids to crypto orgs by exact name match.
    for (auto& org : model.orgs) {
        for (const auto& txorg : model.configtx_orgs) {
            if (txorg.name == org.name && txorg.msp_id) {
                org.msp_id = txorg.msp_id;
                break;
            }
        }
    }

    // State database selection per peer container.
    for (const auto& container : model.containers)
        if (is_peer_image(container))
            model.state_dbs.push_back(state_db_for(container));

    // Merge chaincode deployments sharing name and channel; parse policies.
    for (const auto& incoming : sources.chaincodes) {
        ChaincodeDeployment* merged = nullptr;
        for (auto& existing : model.chaincodes) {
            if (existing.name != incoming.name) continue;
            if (existing.channel == incoming.channel || !existing.channel ||
                !incoming.channel) {
                merged = &existing;
                break;
            }
        }
        if (!merged) {
            model.chaincodes.push_back(incoming);
            merged = &model.chaincodes.back();
        } else {
            if (!merged->channel) merged->channel = incoming.channel;
            if (!merged->policy_raw) merged->policy_raw = incoming.policy_raw;
            for (const auto& target : incoming.install_targets)
                if (std::find(merged->install_targets.begin(),
                              merged->install_targets.end(),
                              target) == merged->install_targets.end())
                    merged->install_targets.push_back(target);
        }
        if (merged->policy_raw && !merged->policy) {
            auto parsed = parse_policy(*merged->policy_raw);
            if (auto* ast = std::get_if<PolicyAst>(&parsed))
                merged->policy = std::move(*ast);
        }
    }

    return model;
}

}  // namespace fablint
