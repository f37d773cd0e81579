#include "fablint/patterns.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>

#include "fablint/policy.hpp"

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

enum class NodeRole { Peer, Orderer, Cli, Ca, CouchDb, Unknown };

NodeRole node_role(const ContainerSpec& container) {
    if (container.image) {
        const std::string& image = *container.image;
        if (image.find("fabric-peer") != std::string::npos) return NodeRole::Peer;
        if (image.find("fabric-orderer") != std::string::npos) return NodeRole::Orderer;
        if (image.find("fabric-tools") != std::string::npos) return NodeRole::Cli;
        if (image.find("fabric-ca") != std::string::npos) return NodeRole::Ca;
        if (image.find("couchdb") != std::string::npos) return NodeRole::CouchDb;
        return NodeRole::Unknown;
    }
    for (const auto& [key, _] : container.env) {
        if (key.rfind("ORDERER_", 0) == 0) return NodeRole::Orderer;
        if (key.rfind("CORE_PEER_", 0) == 0) return NodeRole::Peer;
    }
    return NodeRole::Unknown;
}

Finding make_finding(PatternId pattern, Level level, std::string type,
                     std::string message, SourceLocation location,
                     std::string recommendation) {
    Finding f;
    f.category = descriptor(pattern).category;
    f.type = std::move(type);
    f.message = std::move(message);
    f.location = std::move(location);
    f.recommendation = std::move(recommendation);
    f.pattern = pattern;
    f.level = level;
    return f;
}

std::string first_source(const NetworkModel& model, FileRole role) {
    auto it = model.sources.find(role);
    if (it == model.sources.end() || it->second.empty()) return "";
    return it->second.front();
}

bool has_role(const NetworkModel& model, FileRole role) {
    auto it = model.sources.find(role);
    return it != model.sources.end() && !it->second.empty();
}

// Domain-ish suffix embedded in a container or peer-id name: everything
// after the first '.' or ':' separator, when it still contains a dot.
std::string embedded_domain(std::string_view name) {
    auto sep = name.find_first_of(".:");
    if (sep == std::string_view::npos) return "";
    std::string_view candidate = name.substr(sep + 1);
    if (candidate.find('.') == std::string_view::npos) return "";
    return std::string(candidate);
}

bool matches_org_domain(const NetworkModel& model, std::string_view candidate) {
    for (const auto& org : model.orgs) {
        if (org.domain.empty()) continue;
        if (candidate == org.domain) return true;
        // peer-id values may embed host.domain; accept a trailing match.
        if (candidate.size() > org.domain.size() &&
            candidate.ends_with(org.domain) &&
            candidate[candidate.size() - org.domain.size() - 1] == '.')
            return true;
    }
    return false;
}

std::string strip_port(std::string_view address) {
    auto scheme = address.find("://");
    if (scheme != std::string_view::npos) address.remove_prefix(scheme + 3);
    auto colon = address.find(':');
    if (colon != std::string_view::npos) address = address.substr(0, colon);
    return std::string(address);
}

// Container matching a peer declared as <hostname>.<domain>. The paper's
// compose listings also use the <hostname>:<domain> form.
bool container_matches_peer(const ContainerSpec& container,
                            const std::string& hostname,
                            const std::string& domain) {
    std::string dotted = hostname + "." + domain;
    std::string colon = hostname + ":" + domain;
    if (container.service_key == dotted || container.service_key == hostname)
        return true;
    if (container.container_name &&
        (*container.container_name == dotted || *container.container_name == colon))
        return true;
    return false;
}

enum class CredState { Missing, Empty, Unknown, Present };

CredState cred_state(const EnvValue* value) {
    if (!value) return CredState::Missing;
    if (!value->resolved) return CredState::Unknown;
    return value->resolved->empty() ? CredState::Empty : CredState::Present;
}

CredState cred_state(const std::optional<EnvValue>& value) {
    return cred_state(value ? &*value : nullptr);
}

const std::regex& private_key_regex() {
    static const std::regex re("[0-9a-f]{8,}_sk");
    return re;
}

const std::regex& dotted_quad_regex() {
    static const std::regex re(
        R"((^|[^0-9.])([0-9]{1,3}\.){3}[0-9]{1,3}([^0-9.]|$))");
    return re;
}

bool tls_value_false(const EnvValue* value) {
    if (!value) return true;  // absent counts as off
    if (!value->resolved) return false;  // unresolved: unknown, do not flag
    return iequals(*value->resolved, "false") || value->resolved->empty();
}

bool tls_value_true(const EnvValue* value) {
    return value && value->resolved && iequals(*value->resolved, "true");
}

}  // namespace

const std::array<PatternDescriptor, kPatternCount>& pattern_catalog() {
    static const std::array<PatternDescriptor, kPatternCount> catalog = {{
        {PatternId::StateDbChoice, Category::Functionality,
         pattern_title(PatternId::StateDbChoice), Level::Info},
        {PatternId::InconsistentParams, Category::Functionality,
         pattern_title(PatternId::InconsistentParams), Level::Error},
        {PatternId::ParamHardcoded, Category::Functionality,
         pattern_title(PatternId::ParamHardcoded), Level::Warning},
        {PatternId::ComponentMissing, Category::Functionality,
         pattern_title(PatternId::ComponentMissing), Level::Error},
        {PatternId::YamlSyntax, Category::Functionality,
         pattern_title(PatternId::YamlSyntax), Level::Error},
        {PatternId::ComposeSyntax, Category::Functionality,
         pattern_title(PatternId::ComposeSyntax), Level::Error},
        {PatternId::BlockParams, Category::Performance,
         pattern_title(PatternId::BlockParams), Level::Warning},
        {PatternId::ComplexPolicy, Category::Performance,
         pattern_title(PatternId::ComplexPolicy), Level::Warning},
        {PatternId::SimplePolicy, Category::Security,
         pattern_title(PatternId::SimplePolicy), Level::Warning},
        {PatternId::TlsOnOff, Category::Security,
         pattern_title(PatternId::TlsOnOff), Level::Warning},
        {PatternId::StateDbSecurity, Category::Security,
         pattern_title(PatternId::StateDbSecurity), Level::Error},
        {PatternId::ConsensusMechanism, Category::Security,
         pattern_title(PatternId::ConsensusMechanism), Level::Info},
    }};
    return catalog;
}

const PatternDescriptor& descriptor(PatternId id) {
    return pattern_catalog()[static_cast<std::size_t>(id)];
}

std::set<PatternId> all_patterns_enabled() {
    std::set<PatternId> enabled;
    for (PatternId id : all_patterns()) enabled.insert(id);
    return enabled;
}

std::vector<Finding> check_state_db_choice(const NetworkModel& model) {
    std::vector<Finding> findings;
    for (const auto& db : model.state_dbs) {
        if (db.kind == StateDbKind::LevelDb) {
            findings.push_back(make_finding(
                PatternId::StateDbChoice, Level::Info, "LevelDB state database",
                "LevelDB selected for peer " + db.owning_peer +
                    ": no rich query support",
                db.location,
                "Use CouchDB if rich data queries over JSON values are required!"));
        } else {
            findings.push_back(make_finding(
                PatternId::StateDbChoice, Level::Info, "CouchDB state database",
                "CouchDB selected for peer " + db.owning_peer +
                    ": lower data-processing efficiency",
                db.location,
                "Keep LevelDB for high performance unless rich queries are needed!"));
        }
    }
    return findings;
}

std::vector<Finding> check_inconsistent_params(const NetworkModel& model) {
    std::vector<Finding> findings;
    const std::string crypto_file = first_source(model, FileRole::CryptoConfig);

    // (a) domains embedded in compose names vs crypto-config domains
    if (!model.orgs.empty()) {
        for (const auto& container : model.containers) {
            std::vector<std::string> candidates;
            if (container.container_name)
                candidates.push_back(embedded_domain(*container.container_name));
            if (const EnvValue* peer_id = container.env_value("CORE_PEER_ID");
                peer_id && peer_id->resolved)
                candidates.push_back(embedded_domain(*peer_id->resolved));
            for (const auto& candidate : candidates) {
                if (candidate.empty()) continue;
                if (matches_org_domain(model, candidate)) continue;
                findings.push_back(make_finding(
                    PatternId::InconsistentParams, Level::Error,
                    "Inconsistent domain",
                    "domain '" + candidate + "' of container " +
                        container.display_name() + " in " +
                        container.location.file +
                        " matches no organization domain in " + crypto_file,
                    container.location,
                    "Keep the DOMAIN consistent between crypto-config.yaml and "
                    "docker-compose.yaml!"));
                break;  // one finding per container
            }
        }
    }

    // (b) CORE_PEER_LOCALMSPID vs configtx organization IDs
    std::vector<std::string> msp_ids;
    for (const auto& org : model.configtx_orgs)
        if (org.msp_id) msp_ids.push_back(*org.msp_id);
    if (!msp_ids.empty()) {
        const std::string configtx_file = first_source(model, FileRole::Configtx);
        for (const auto& container : model.containers) {
            const EnvValue* msp = container.env_value("CORE_PEER_LOCALMSPID");
            if (!msp || !msp->resolved) continue;
            if (std::find(msp_ids.begin(), msp_ids.end(), *msp->resolved) !=
                msp_ids.end())
                continue;
            findings.push_back(make_finding(
                PatternId::InconsistentParams, Level::Error,
                "Inconsistent MSP id",
                "CORE_PEER_LOCALMSPID '" + *msp->resolved + "' of container " +
                    container.display_name() + " matches no organization ID in " +
                    configtx_file,
                container.location,
                "Use the MSP ID declared in configtx.yaml!"));
        }
    }

    // (c) channels used in scripts vs channel IDs passed to configtxgen
    if (!model.declared_channel_ids.empty()) {
        for (const auto& channel : model.channels) {
            if (std::find(model.declared_channel_ids.begin(),
                          model.declared_channel_ids.end(),
                          channel.name) != model.declared_channel_ids.end())
                continue;
            findings.push_back(make_finding(
                PatternId::InconsistentParams, Level::Error,
                "Inconsistent channel name",
                "channel '" + channel.name +
                    "' is created in the scripts but never generated by "
                    "configtxgen",
                channel.location,
                "Generate the channel transaction with a matching -channelID!"));
        }
    }

    return findings;
}

std::vector<Finding> check_hardcoded(const NetworkModel& model) {
    std::vector<Finding> findings;
    for (const auto& container : model.containers) {
        if (container.command) {
            // Tokens carrying a ${...} reference are the compliant form.
            std::string token;
            std::string hit;
            for (char c : *container.command + std::string(" ")) {
                if (std::isspace(static_cast<unsigned char>(c))) {
                    if (token.find("${") == std::string::npos &&
                        std::regex_search(token, private_key_regex()) &&
                        hit.empty())
                        hit = token;
                    token.clear();
                } else {
                    token.push_back(c);
                }
            }
            if (!hit.empty())
                findings.push_back(make_finding(
                    PatternId::ParamHardcoded, Level::Warning,
                    "Hardcoded private key",
                    "command of container " + container.display_name() +
                        " hardcodes the generated private key file '" + hit + "'",
                    container.location,
                    "Reference the key through a variable such as "
                    "${PRIVATE_KEY} instead of hardcoding it!"));
        }
        for (const auto& [key, value] : container.env) {
            if (!value.is_literal) continue;
            if (std::regex_search(value.raw, private_key_regex())) {
                findings.push_back(make_finding(
                    PatternId::ParamHardcoded, Level::Warning,
                    "Hardcoded private key",
                    "environment value " + key + " of container " +
                        container.display_name() +
                        " hardcodes a generated private key file",
                    container.location,
                    "Reference the key through a variable instead of "
                    "hardcoding it!"));
            } else if (std::regex_search(value.raw, dotted_quad_regex())) {
                findings.push_back(make_finding(
                    PatternId::ParamHardcoded, Level::Warning,
                    "Hardcoded address",
                    "environment value " + key + " of container " +
                        container.display_name() + " hardcodes the IP address '" +
                        value.raw + "'",
                    container.location,
                    "Use service names or variables instead of fixed IP "
                    "addresses!"));
            }
        }
    }
    return findings;
}

std::vector<Finding> check_component_missing(const NetworkModel& model) {
    std::vector<Finding> findings;
    const bool compose_present = has_role(model, FileRole::Compose);

    if (model.crypto_present_but_empty)
        findings.push_back(make_finding(
            PatternId::ComponentMissing, Level::Error, "No organizations",
            "crypto-config declares neither PeerOrgs nor OrdererOrgs",
            SourceLocation{first_source(model, FileRole::CryptoConfig), 1,
                           std::nullopt},
            "Declare the network organizations in crypto-config.yaml!"));

    // CouchDB selected but the database container does not exist.
    for (const auto& db : model.state_dbs) {
        if (db.kind != StateDbKind::CouchDb) continue;
        bool found = false;
        if (db.couch_address) {
            found = model.container_by_name(strip_port(*db.couch_address)) != nullptr;
        } else {
            found = std::any_of(model.containers.begin(), model.containers.end(),
                                [](const ContainerSpec& c) {
                                    return node_role(c) == NodeRole::CouchDb;
                                });
        }
        if (!found)
            findings.push_back(make_finding(
                PatternId::ComponentMissing, Level::Error,
                "CouchDB container missing",
                "peer " + db.owning_peer +
                    " selects CouchDB but no matching CouchDB container is "
                    "defined",
                db.location,
                "Add the CouchDB service the peer points at!"));
    }

    // Declared peers with no container.
    if (compose_present) {
        for (const auto& org : model.orgs) {
            if (org.domain.empty()) continue;
            for (const auto& hostname : org.peer_hostnames) {
                bool found = std::any_of(
                    model.containers.begin(), model.containers.end(),
                    [&](const ContainerSpec& c) {
                        return container_matches_peer(c, hostname, org.domain);
                    });
                if (!found)
                    findings.push_back(make_finding(
                        PatternId::ComponentMissing, Level::Error,
                        "Peer container missing",
                        "peer " + hostname + "." + org.domain +
                            " of organization " + org.name +
                            " has no container in the compose files",
                        org.location,
                        "Add a container for every peer declared in "
                        "crypto-config.yaml!"));
            }
        }

        if (model.orderer) {
            for (const auto& address : model.orderer->orderer_addresses) {
                std::string host = strip_port(address);
                if (model.container_by_name(host)) continue;
                findings.push_back(make_finding(
                    PatternId::ComponentMissing, Level::Error,
                    "Orderer container missing",
                    "orderer address " + address +
                        " has no matching container in the compose files",
                    model.orderer->location,
                    "Add a container for every orderer address in "
                    "configtx.yaml!"));
            }
        }
    }

    // Channels without an anchor peer update.
    for (const auto& channel : model.channels) {
        if (!channel.anchor_update_orgs.empty()) continue;
        findings.push_back(make_finding(
            PatternId::ComponentMissing, Level::Warning, "No anchor peer",
            "channel " + channel.name + " has no anchor peer update",
            channel.location,
            "Update at least one anchor peer per channel so gossip can "
            "cross organizations!"));
    }

    // Instantiated chaincodes with no install.
    for (const auto& chaincode : model.chaincodes) {
        if (!chaincode.channel || !chaincode.install_targets.empty()) continue;
        findings.push_back(make_finding(
            PatternId::ComponentMissing, Level::Error, "Chaincode not installed",
            "chaincode " + chaincode.name + " is instantiated on channel " +
                *chaincode.channel + " but never installed on any peer",
            chaincode.location,
            "Install the chaincode on every endorsing peer before "
            "instantiating it!"));
    }

    return findings;
}

std::vector<Finding> check_block_params(const NetworkModel& model,
                                        const ThresholdConfig& thresholds) {
    std::vector<Finding> findings;
    if (!model.orderer) return findings;
    const OrdererConfig& orderer = *model.orderer;

    if (orderer.batch_timeout_ms) {
        if (*orderer.batch_timeout_ms > thresholds.batch_timeout_max_ms)
            findings.push_back(make_finding(
                PatternId::BlockParams, Level::Warning, "BlockTime too big",
                "BatchTimeout of " + std::to_string(*orderer.batch_timeout_ms) +
                    " ms exceeds " + std::to_string(thresholds.batch_timeout_max_ms) +
                    " ms: clients wait long for blocks under low load",
                orderer.location, "Lower the BatchTimeout!"));
        else if (*orderer.batch_timeout_ms < thresholds.batch_timeout_min_ms)
            findings.push_back(make_finding(
                PatternId::BlockParams, Level::Warning, "BlockTime too small",
                "BatchTimeout of " + std::to_string(*orderer.batch_timeout_ms) +
                    " ms is below " + std::to_string(thresholds.batch_timeout_min_ms) +
                    " ms: the ledger splits into many small blocks under load",
                orderer.location, "Raise the BatchTimeout!"));
    }

    if (orderer.max_message_count) {
        if (*orderer.max_message_count > thresholds.max_message_count_max)
            findings.push_back(make_finding(
                PatternId::BlockParams, Level::Warning, "BlockSize too big",
                "MaxMessageCount of " + std::to_string(*orderer.max_message_count) +
                    " exceeds " + std::to_string(thresholds.max_message_count_max),
                orderer.location, "Lower the MaxMessageCount!"));
        else if (*orderer.max_message_count < thresholds.max_message_count_min)
            findings.push_back(make_finding(
                PatternId::BlockParams, Level::Warning, "BlockSize too small",
                "MaxMessageCount of " + std::to_string(*orderer.max_message_count) +
                    " is below " + std::to_string(thresholds.max_message_count_min) +
                    ": blocks are cut too eagerly",
                orderer.location, "Raise the MaxMessageCount!"));
    }

    if (orderer.preferred_max_bytes && orderer.absolute_max_bytes &&
        *orderer.preferred_max_bytes > *orderer.absolute_max_bytes)
        findings.push_back(make_finding(
            PatternId::BlockParams, Level::Warning,
            "Inconsistent batch byte limits",
            "PreferredMaxBytes exceeds AbsoluteMaxBytes",
            orderer.location,
            "Keep PreferredMaxBytes at or below AbsoluteMaxBytes!"));

    return findings;
}

std::vector<Finding> check_policy_patterns(const NetworkModel& model,
                                           const ThresholdConfig& thresholds) {
    std::vector<Finding> findings;
    for (const auto& chaincode : model.chaincodes) {
        if (!chaincode.policy_raw) continue;
        if (!chaincode.policy) {
            findings.push_back(make_finding(
                PatternId::SimplePolicy, Level::Warning, "Unparsable policy",
                "endorsement policy of chaincode " + chaincode.name +
                    " could not be parsed: '" + *chaincode.policy_raw + "'",
                chaincode.location,
                "Write the policy as AND/OR/OutOf over quoted MSP "
                "principals!"));
            continue;
        }
        switch (classify(*chaincode.policy, thresholds)) {
            case PolicyClass::Simple:
                findings.push_back(make_finding(
                    PatternId::SimplePolicy, Level::Warning,
                    "Simple endorsement policy",
                    "a single organization can satisfy the endorsement policy "
                    "of chaincode " + chaincode.name +
                        ": one evil peer may tamper the endorsement result",
                    chaincode.location,
                    "Require endorsements from more than one organization!"));
                break;
            case PolicyClass::Complex:
                findings.push_back(make_finding(
                    PatternId::ComplexPolicy, Level::Warning,
                    "Complex endorsement policy",
                    "endorsement policy of chaincode " + chaincode.name +
                        " needs " +
                        std::to_string(min_signers(*chaincode.policy).value) +
                        " signatures: collecting them costs time and "
                        "computing resources",
                    chaincode.location,
                    "Simplify the endorsement policy!"));
                break;
            case PolicyClass::Moderate:
                break;
        }
    }
    return findings;
}

std::vector<Finding> check_tls(const NetworkModel& model) {
    std::vector<Finding> findings;
    for (const auto& container : model.containers) {
        NodeRole role = node_role(container);
        std::string_view tls_key;
        std::string_view auth_key;
        if (role == NodeRole::Peer || role == NodeRole::Cli) {
            tls_key = "CORE_PEER_TLS_ENABLED";
            auth_key = "CORE_PEER_TLS_CLIENTAUTHREQUIRED";
        } else if (role == NodeRole::Orderer) {
            tls_key = "ORDERER_GENERAL_TLS_ENABLED";
            auth_key = "ORDERER_GENERAL_TLS_CLIENTAUTHREQUIRED";
        } else {
            continue;
        }

        const EnvValue* tls = container.env_value(tls_key);
        if (tls_value_false(tls)) {
            findings.push_back(make_finding(
                PatternId::TlsOnOff, Level::Warning, "TLS off",
                "TLS disabled in container " + container.display_name() + "!",
                container.location, "Enable TLS for security!"));
        } else if (tls_value_true(tls)) {
            const EnvValue* auth = container.env_value(auth_key);
            if (!tls_value_true(auth))
                findings.push_back(make_finding(
                    PatternId::TlsOnOff, Level::Info, "TLS client auth off",
                    "TLS client authentication disabled in container " +
                        container.display_name() + "!",
                    container.location,
                    "Turn on TLS client authentication so nodes verify their "
                    "clients!"));
        }
    }
    return findings;
}

std::vector<Finding> check_state_db_security(const NetworkModel& model) {
    std::vector<Finding> findings;
    for (const auto& db : model.state_dbs) {
        if (db.kind != StateDbKind::CouchDb) continue;

        auto flag_empty = [&](std::string_view side, const SourceLocation& where) {
            findings.push_back(make_finding(
                PatternId::StateDbSecurity, Level::Error,
                "State database credentials empty",
                std::string(side) + " credentials for the CouchDB of peer " +
                    db.owning_peer + " are empty: everyone can access the "
                    "state database",
                where,
                "Set a non-empty CouchDB username and password on both the "
                "peer and the database container!"));
        };

        CredState peer_user = cred_state(db.peer_username);
        CredState peer_pass = cred_state(db.peer_password);
        if (peer_user == CredState::Missing || peer_user == CredState::Empty ||
            peer_pass == CredState::Missing || peer_pass == CredState::Empty)
            flag_empty("peer-side", db.location);
        else if (peer_user == CredState::Unknown || peer_pass == CredState::Unknown)
            findings.push_back(make_finding(
                PatternId::StateDbSecurity, Level::Info,
                "State database credentials unresolved",
                "peer-side CouchDB credentials of peer " + db.owning_peer +
                    " come from unresolved variables",
                db.location,
                "Provide the credential variables when bootstrapping!"));

        const ContainerSpec* couch =
            db.couch_address ? model.container_by_name(strip_port(*db.couch_address))
                             : nullptr;
        if (!couch) continue;

        const EnvValue* couch_user = couch->env_value("COUCHDB_USER");
        const EnvValue* couch_pass = couch->env_value("COUCHDB_PASSWORD");
        CredState user_state = cred_state(couch_user);
        CredState pass_state = cred_state(couch_pass);
        if (user_state == CredState::Missing || user_state == CredState::Empty ||
            pass_state == CredState::Missing || pass_state == CredState::Empty) {
            flag_empty("container-side", couch->location);
        } else if (user_state == CredState::Present &&
                   pass_state == CredState::Present &&
                   peer_user == CredState::Present &&
                   peer_pass == CredState::Present) {
            if (*db.peer_username->resolved != *couch_user->resolved ||
                *db.peer_password->resolved != *couch_pass->resolved)
                findings.push_back(make_finding(
                    PatternId::StateDbSecurity, Level::Error,
                    "State database credential mismatch",
                    "peer " + db.owning_peer + " and container " +
                        couch->display_name() +
                        " use different CouchDB credentials",
                    couch->location,
                    "Keep the CouchDB credentials consistent between the peer "
                    "and the database container!"));
        }
    }
    return findings;
}

std::vector<Finding> check_consensus(const NetworkModel& model) {
    std::vector<Finding> findings;

    if (model.orderer && model.orderer->consensus_type == ConsensusType::Solo)
        findings.push_back(make_finding(
            PatternId::ConsensusMechanism, Level::Info, "Solo consensus",
            "Solo ordering service is intended for test only and has been "
            "deprecated",
            model.orderer->location,
            "Use Raft (etcdraft) for production networks!"));

    bool single = false;
    SourceLocation where;
    if (model.orderer && !model.orderer->orderer_addresses.empty()) {
        std::vector<std::string> distinct;
        for (const auto& address : model.orderer->orderer_addresses)
            if (std::find(distinct.begin(), distinct.end(), address) ==
                distinct.end())
                distinct.push_back(address);
        if (distinct.size() == 1) {
            single = true;
            where = model.orderer->location;
        }
    }
    if (!single && has_role(model, FileRole::Compose)) {
        const ContainerSpec* only = nullptr;
        int count = 0;
        for (const auto& container : model.containers)
            if (node_role(container) == NodeRole::Orderer) {
                ++count;
                only = &container;
            }
        if (count == 1) {
            single = true;
            where = only->location;
        }
    }
    if (single)
        findings.push_back(make_finding(
            PatternId::ConsensusMechanism, Level::Warning, "Single orderer",
            "the network runs a single orderer node: the ordering service "
            "cannot be crash fault tolerant",
            where,
            "Run several orderer nodes, whichever consensus mechanism is "
            "chosen!"));

    return findings;
}

std::vector<Finding> run_all(const NetworkModel& model,
                             const ThresholdConfig& thresholds,
                             const std::set<PatternId>& enabled) {
    struct Check {
        PatternId id;  // failure attribution
        std::function<std::vector<Finding>()> run;
    };
    const std::vector<Check> checks = {
        {PatternId::StateDbChoice, [&] { return check_state_db_choice(model); }},
        {PatternId::InconsistentParams,
         [&] { return check_inconsistent_params(model); }},
        {PatternId::ParamHardcoded, [&] { return check_hardcoded(model); }},
        {PatternId::ComponentMissing,
         [&] { return check_component_missing(model); }},
        {PatternId::BlockParams,
         [&] { return check_block_params(model, thresholds); }},
        {PatternId::SimplePolicy,
         [&] { return check_policy_patterns(model, thresholds); }},
        {PatternId::TlsOnOff, [&] { return check_tls(model); }},
        {PatternId::StateDbSecurity,
         [&] { return check_state_db_security(model); }},
        {PatternId::ConsensusMechanism, [&] { return check_consensus(model); }},
    };

    std::vector<Finding> findings;
    for (const Finding& finding : model.parse_findings)
        if (enabled.count(finding.pattern)) findings.push_back(finding);

    for (const Check& check : checks) {
        std::vector<Finding> produced;
        try {
            produced = check.run();
        } catch (const std::exception& e) {
            if (enabled.count(check.id))
                findings.push_back(make_finding(
                    check.id, Level::Error, "pattern failure",
                    std::string("pattern check failed internally: ") + e.what(),
                    SourceLocation{"<internal>", std::nullopt, std::nullopt},
                    "Report this as a bug in the linter!"));
            continue;
        }
        for (Finding& finding : produced)
            if (enabled.count(finding.pattern))
                findings.push_back(std::move(finding));
    }

    std::stable_sort(findings.begin(), findings.end(),
                     [](const Finding& a, const Finding& b) {
                         if (a.location.file != b.location.file)
                             return a.location.file < b.location.file;
                         int la = a.location.line.value_or(0);
                         int lb = b.location.line.value_or(0);
                         if (la != lb) return la < lb;
                         return static_cast<int>(a.pattern) <
                                static_cast<int>(b.pattern);
                     });
    return findings;
}

}  // namespace fablint
