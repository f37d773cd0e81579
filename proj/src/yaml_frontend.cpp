#include "fablint/yaml_frontend.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <yaml-cpp/yaml.h>

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

bool valid_utf8(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        std::size_t len;
        if (c < 0x80) len = 1;
        else if ((c & 0xE0) == 0xC0) len = 2;
        else if ((c & 0xF0) == 0xE0) len = 3;
        else if ((c & 0xF8) == 0xF0) len = 4;
        else return false;
        if (i + len > text.size()) return false;
        for (std::size_t j = 1; j < len; ++j)
            if ((static_cast<unsigned char>(text[i + j]) & 0xC0) != 0x80)
                return false;
        i += len;
    }
    return true;
}

SourceLocation location_of(const YAML::Node& node, const std::string& path) {
    SourceLocation loc;
    loc.file = path;
    if (node.Mark().line >= 0) {
        loc.line = node.Mark().line + 1;
        if (node.Mark().column >= 0) loc.column = node.Mark().column + 1;
    }
    return loc;
}

YamlNode convert(const YAML::Node& node, const std::string& path) {
    YamlNode out;
    out.location = location_of(node, path);
    switch (node.Type()) {
        case YAML::NodeType::Scalar:
            out.kind = YamlNode::Kind::Scalar;
            out.scalar = node.Scalar();
            break;
        case YAML::NodeType::Map:
            out.kind = YamlNode::Kind::Mapping;
            for (auto it = node.begin(); it != node.end(); ++it) {
                std::string key = it->first.IsScalar() ? it->first.Scalar() : "";
                YamlNode value = convert(it->second, path);
                // Mapping values often carry the mark of their own first
                // token; the key mark is the better anchor for scalars.
                if (it->first.Mark().line >= 0 &&
                    value.kind == YamlNode::Kind::Scalar)
                    value.location = location_of(it->first, path);
                out.entries.emplace_back(std::move(key), std::move(value));
            }
            break;
        case YAML::NodeType::Sequence:
            out.kind = YamlNode::Kind::Sequence;
            for (const auto& item : node)
                out.items.push_back(convert(item, path));
            break;
        default:
            out.kind = YamlNode::Kind::Null;
            break;
    }
    return out;
}

Finding syntax_finding(const std::string& path, std::optional<int> line,
                       const std::string& detail) {
    Finding f;
    f.category = Category::Functionality;
    f.type = "Yaml syntax error";
    f.message = detail;
    f.location.file = path;
    f.location.line = line;
    f.recommendation = "Fix the Yaml syntax before bootstrapping the network!";
    f.pattern = PatternId::YamlSyntax;
    f.level = Level::Error;
    return f;
}

Finding compose_finding(const SourceLocation& location, const std::string& message,
                        const std::string& recommendation) {
    Finding f;
    f.category = Category::Functionality;
    f.type = "Docker compose schema error";
    f.message = message;
    f.location = location;
    f.recommendation = recommendation;
    f.pattern = PatternId::ComposeSyntax;
    f.level = Level::Error;
    return f;
}

std::optional<int> to_int(const std::optional<std::string>& text) {
    if (!text) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
    if (ec != std::errc{} || ptr != text->data() + text->size()) return std::nullopt;
    return value;
}

void read_org_entry(const YamlNode& entry, std::vector<OrgSpec>& out) {
    if (entry.kind != YamlNode::Kind::Mapping) return;
    OrgSpec org;
    org.location = entry.location;
    org.name = entry.scalar_at("Name").value_or("");
    org.domain = entry.scalar_at("Domain").value_or("");

    if (const YamlNode* specs = entry.find("Specs");
        specs && specs->kind == YamlNode::Kind::Sequence) {
        for (const auto& spec : specs->items) {
            auto hostname = spec.scalar_at("Hostname");
            if (hostname && !hostname->empty() &&
                std::find(org.peer_hostnames.begin(), org.peer_hostnames.end(),
                          *hostname) == org.peer_hostnames.end())
                org.peer_hostnames.push_back(*hostname);
        }
    }
    if (const YamlNode* tmpl = entry.find("Template"))
        org.template_count = to_int(tmpl->scalar_at("Count"));
    if (const YamlNode* users = entry.find("Users"))
        org.user_count = to_int(users->scalar_at("Count"));

    // Template peers follow the peer0..peerN-1 naming of cryptogen.
    if (org.peer_hostnames.empty() && org.template_count)
        for (int i = 0; i < *org.template_count; ++i)
            org.peer_hostnames.push_back("peer" + std::to_string(i));

    out.push_back(std::move(org));
}

ConsensusType consensus_from_text(std::string_view text) {
    if (iequals(text, "solo")) return ConsensusType::Solo;
    if (iequals(text, "kafka")) return ConsensusType::Kafka;
    if (iequals(text, "etcdraft")) return ConsensusType::EtcdRaft;
    return ConsensusType::Unknown;
}

void read_command(const YamlNode& node, ContainerSpec& container) {
    if (node.kind == YamlNode::Kind::Scalar) {
        container.command = node.scalar;
    } else if (node.kind == YamlNode::Kind::Sequence) {
        std::string joined;
        for (const auto& item : node.items) {
            if (!joined.empty()) joined.push_back(' ');
            joined += item.scalar;
        }
        container.command = std::move(joined);
    }
}

void read_environment(const YamlNode& node, ContainerSpec& container,
                      const std::map<std::string, std::string>& host_env) {
    if (node.kind == YamlNode::Kind::Sequence) {
        // KEY=VALUE list form; a bare KEY maps to an empty value.
        for (const auto& item : node.items) {
            if (item.kind != YamlNode::Kind::Scalar) continue;
            auto eq = item.scalar.find('=');
            std::string key = item.scalar.substr(0, eq);
            std::string value =
                eq == std::string::npos ? "" : item.scalar.substr(eq + 1);
            container.env.emplace_back(std::move(key),
                                       interpolate_env(std::move(value), host_env));
        }
    } else if (node.kind == YamlNode::Kind::Mapping) {
        for (const auto& [key, value] : node.entries)
            container.env.emplace_back(
                key, interpolate_env(value.kind == YamlNode::Kind::Scalar
                                         ? value.scalar
                                         : std::string{},
                                     host_env));
    }
}

void read_string_list(const YamlNode* node, std::vector<std::string>& out) {
    if (!node) return;
    if (node->kind == YamlNode::Kind::Sequence) {
        for (const auto& item : node->items)
            if (item.kind == YamlNode::Kind::Scalar) out.push_back(item.scalar);
    } else if (node->kind == YamlNode::Kind::Mapping) {
        // depends_on long form: service keys with conditions.
        for (const auto& [key, _] : node->entries) out.push_back(key);
    }
}

}  // namespace

const YamlNode* YamlNode::find(std::string_view key) const {
    for (const auto& [name, value] : entries)
        if (name == key) return &value;
    return nullptr;
}

std::optional<std::string> YamlNode::scalar_at(std::string_view key) const {
    const YamlNode* node = find(key);
    if (!node || node->kind != Kind::Scalar) return std::nullopt;
    return node->scalar;
}

YamlParseResult parse_yaml(std::string_view text, const std::string& path) {
    if (!valid_utf8(text))
        return {std::nullopt,
                syntax_finding(path, 1, "file is not valid UTF-8")};
    try {
        YAML::Node node = YAML::Load(std::string(text));
        DocumentTree tree{convert(node, path), path};
        if (tree.root.location.line == std::nullopt) tree.root.location.line = 1;
        return {std::move(tree), std::nullopt};
    } catch (const YAML::ParserException& e) {
        return {std::nullopt,
                syntax_finding(path, e.mark.line >= 0 ? e.mark.line + 1 : 1,
                               e.msg)};
    } catch (const YAML::Exception& e) {
        return {std::nullopt, syntax_finding(path, std::nullopt, e.msg)};
    }
}

CryptoFragment parse_crypto_config(const DocumentTree& tree) {
    CryptoFragment fragment;
    const YamlNode* peer_orgs = tree.root.find("PeerOrgs");
    const YamlNode* orderer_orgs = tree.root.find("OrdererOrgs");
    if (!peer_orgs && !orderer_orgs) {
        fragment.empty_note = tree.root.kind == YamlNode::Kind::Mapping ||
                              tree.root.kind == YamlNode::Kind::Null;
        return fragment;
    }
    for (const YamlNode* section : {orderer_orgs, peer_orgs}) {
        if (!section || section->kind != YamlNode::Kind::Sequence) continue;
        for (const auto& entry : section->items)
            read_org_entry(entry, fragment.orgs);
    }
    return fragment;
}

ConfigtxFragment parse_configtx(const DocumentTree& tree) {
    ConfigtxFragment fragment;
    fragment.orderer.location = tree.root.location;

    if (const YamlNode* orderer = tree.root.find("Orderer")) {
        fragment.orderer.location = orderer->location;
        if (auto type = orderer->scalar_at("OrdererType"))
            fragment.orderer.consensus_type = consensus_from_text(*type);
        if (auto timeout = orderer->scalar_at("BatchTimeout")) {
            fragment.orderer.batch_timeout_ms = parse_duration_ms(*timeout);
            if (!fragment.orderer.batch_timeout_ms) {
                const YamlNode* node = orderer->find("BatchTimeout");
                fragment.findings.push_back(syntax_finding(
                    tree.path, node->location.line,
                    "BatchTimeout value '" + *timeout + "' is not a duration"));
            }
        }
        if (const YamlNode* batch = orderer->find("BatchSize")) {
            if (auto count = batch->scalar_at("MaxMessageCount"))
                fragment.orderer.max_message_count = to_int(count);
            if (auto bytes = batch->scalar_at("AbsoluteMaxBytes"))
                fragment.orderer.absolute_max_bytes = parse_byte_size(*bytes);
            if (auto bytes = batch->scalar_at("PreferredMaxBytes"))
                fragment.orderer.preferred_max_bytes = parse_byte_size(*bytes);
        }
        if (const YamlNode* addresses = orderer->find("Addresses"))
            read_string_list(addresses, fragment.orderer.orderer_addresses);
    }

    if (const YamlNode* orgs = tree.root.find("Organizations");
        orgs && orgs->kind == YamlNode::Kind::Sequence) {
        for (const auto& entry : orgs->items) {
            if (entry.kind != YamlNode::Kind::Mapping) continue;
            ConfigtxOrg org;
            org.name = entry.scalar_at("Name").value_or("");
            org.msp_id = entry.scalar_at("ID");
            org.location = entry.location;
            if (!org.name.empty()) fragment.orgs.push_back(std::move(org));
        }
    }

    return fragment;
}

ComposeFragment parse_compose(const DocumentTree& tree,
                              const std::map<std::string, std::string>& host_env) {
    DocumentTree trees[] = {tree};
    return parse_compose_files(trees, host_env);
}

ComposeFragment parse_compose_files(
    std::span<const DocumentTree> trees,
    const std::map<std::string, std::string>& host_env) {
    ComposeFragment fragment;
    std::vector<ContainerSpec> containers;

    for (const DocumentTree& tree : trees) {
        if (tree.root.kind == YamlNode::Kind::Null) continue;
        const YamlNode* services = tree.root.find("services");
        if (!services || services->kind != YamlNode::Kind::Mapping) {
            fragment.findings.push_back(compose_finding(
                tree.root.location, "no 'services' mapping in compose file",
                "Define the network components under a 'services' mapping!"));
            continue;
        }
        for (const auto& [service_key, body] : services->entries) {
            ContainerSpec container;
            container.service_key = service_key;
            container.location = body.location;
            if (body.kind == YamlNode::Kind::Mapping) {
                container.container_name = body.scalar_at("container_name");
                container.image = body.scalar_at("image");
                if (const YamlNode* env = body.find("environment"))
                    read_environment(*env, container, host_env);
                if (const YamlNode* command = body.find("command"))
                    read_command(*command, container);
                read_string_list(body.find("volumes"), container.volumes);
                read_string_list(body.find("depends_on"), container.depends_on);
                if (!container.image && !body.find("build"))
                    fragment.findings.push_back(compose_finding(
                        body.location,
                        "service '" + service_key + "' has neither image nor build",
                        "Give every service an image or a build context!"));
            }
            // Later compose files override service keys.
            auto existing = std::find_if(
                containers.begin(), containers.end(),
                [&](const ContainerSpec& c) { return c.service_key == service_key; });
            if (existing != containers.end())
                *existing = std::move(container);
            else
                containers.push_back(std::move(container));
        }
    }

    for (std::size_t i = 0; i < containers.size(); ++i) {
        const auto& container = containers[i];
        if (container.container_name) {
            for (std::size_t j = 0; j < i; ++j) {
                if (containers[j].container_name == container.container_name) {
                    fragment.findings.push_back(compose_finding(
                        container.location,
                        "duplicate container_name '" + *container.container_name + "'",
                        "Use a unique container_name per service!"));
                    break;
                }
            }
        }
        for (const auto& dep : container.depends_on) {
            bool defined = std::any_of(
                containers.begin(), containers.end(),
                [&](const ContainerSpec& c) { return c.service_key == dep; });
            if (!defined)
                fragment.findings.push_back(compose_finding(
                    container.location,
                    "service '" + container.service_key +
                        "' depends_on undefined service '" + dep + "'",
                    "Declare the service '" + dep + "' or drop the dependency!"));
        }
    }

    fragment.containers = std::move(containers);
    return fragment;
}

EnvValue interpolate_env(std::string raw,
                         const std::map<std::string, std::string>& host_env) {
    EnvValue value;
    value.raw = std::move(raw);

    std::string resolved;
    bool has_reference = false;
    bool all_resolved = true;
    std::size_t i = 0;
    while (i < value.raw.size()) {
        if (value.raw[i] == '$' && i + 1 < value.raw.size() &&
            value.raw[i + 1] == '{') {
            auto close = value.raw.find('}', i + 2);
            if (close != std::string::npos) {
                has_reference = true;
                std::string body = value.raw.substr(i + 2, close - i - 2);
                std::string name = body;
                std::optional<std::string> fallback;
                if (auto sep = body.find(":-"); sep != std::string::npos) {
                    name = body.substr(0, sep);
                    fallback = body.substr(sep + 2);
                }
                if (auto it = host_env.find(name); it != host_env.end())
                    resolved += it->second;
                else if (fallback)
                    resolved += *fallback;
                else
                    all_resolved = false;
                i = close + 1;
                continue;
            }
        }
        resolved.push_back(value.raw[i]);
        ++i;
    }

    value.is_literal = !has_reference;
    if (!has_reference)
        value.resolved = value.raw;
    else if (all_resolved)
        value.resolved = std::move(resolved);
    return value;
}

std::optional<std::int64_t> parse_duration_ms(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
        ++pos;
    if (pos == 0) return std::nullopt;
    double number;
    try {
        number = std::stod(std::string(text.substr(0, pos)));
    } catch (...) {
        return std::nullopt;
    }
    std::string_view suffix = text.substr(pos);
    double scale;
    if (suffix == "ms") scale = 1;
    else if (suffix == "s") scale = 1000;
    else if (suffix == "m") scale = 60 * 1000;
    else if (suffix == "h") scale = 60 * 60 * 1000;
    else return std::nullopt;
    return static_cast<std::int64_t>(std::llround(number * scale));
}

std::optional<std::int64_t> parse_byte_size(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos == 0) return std::nullopt;
    std::int64_t number = std::stoll(std::string(text.substr(0, pos)));
    std::string_view suffix = text.substr(pos);
    while (!suffix.empty() && suffix.front() == ' ') suffix.remove_prefix(1);
    if (suffix.empty()) return number;
    if (iequals(suffix, "kb") || iequals(suffix, "k")) return number * 1024;
    if (iequals(suffix, "mb") || iequals(suffix, "m")) return number * 1024 * 1024;
    if (iequals(suffix, "gb") || iequals(suffix, "g")) return number * 1024 * 1024 * 1024;
    return std::nullopt;
}

}  // namespace fablint
