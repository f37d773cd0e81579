#include <map>
#include <string>

#include "doctest.h"
#include "fablint/yaml_frontend.hpp"

using namespace fablint;

namespace {

const std::map<std::string, std::string> kNoEnv;

DocumentTree parse_ok(const std::string& text, const std::string& path = "t.yaml") {
    YamlParseResult result = parse_yaml(text, path);
    REQUIRE(result.tree.has_value());
    REQUIRE(!result.finding.has_value());
    return *result.tree;
}

// Minimal serializer used only to close the parse -> serialize -> parse loop.
std::string serialize(const YamlNode& node, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::string out;
    switch (node.kind) {
        case YamlNode::Kind::Null:
            break;
        case YamlNode::Kind::Scalar:
            out = "\"" + node.scalar + "\"";
            break;
        case YamlNode::Kind::Mapping:
            for (const auto& [key, value] : node.entries) {
                out += pad + key + ":";
                if (value.kind == YamlNode::Kind::Scalar)
                    out += " " + serialize(value) + "\n";
                else if (value.kind == YamlNode::Kind::Null)
                    out += "\n";
                else
                    out += "\n" + serialize(value, indent + 1);
            }
            break;
        case YamlNode::Kind::Sequence:
            for (const auto& item : node.items) {
                if (item.kind == YamlNode::Kind::Scalar) {
                    out += pad + "- " + serialize(item) + "\n";
                } else {
                    out += pad + "-\n" + serialize(item, indent + 1);
                }
            }
            break;
    }
    return out;
}

bool structurally_equal(const YamlNode& a, const YamlNode& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == YamlNode::Kind::Scalar) return a.scalar == b.scalar;
    if (a.kind == YamlNode::Kind::Mapping) {
        if (a.entries.size() != b.entries.size()) return false;
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            if (a.entries[i].first != b.entries[i].first ||
                !structurally_equal(a.entries[i].second, b.entries[i].second))
                return false;
        return true;
    }
    if (a.kind == YamlNode::Kind::Sequence) {
        if (a.items.size() != b.items.size()) return false;
        for (std::size_t i = 0; i < a.items.size(); ++i)
            if (!structurally_equal(a.items[i], b.items[i])) return false;
        return true;
    }
    return true;
}

}  // namespace

TEST_CASE("parse_yaml keeps entry order and positions") {
    DocumentTree tree = parse_ok("Name: org\nDomain: org.consortium.com\n");
    REQUIRE(tree.root.kind == YamlNode::Kind::Mapping);
    REQUIRE(tree.root.entries.size() == 2);
    CHECK(tree.root.entries[0].first == "Name");
    CHECK(tree.root.entries[0].second.scalar == "org");
    CHECK(tree.root.entries[0].second.location.line == 1);
    CHECK(tree.root.entries[1].first == "Domain");
    CHECK(tree.root.entries[1].second.scalar == "org.consortium.com");
    CHECK(tree.root.entries[1].second.location.line == 2);
}

TEST_CASE("parse_yaml on an empty document yields a Null root") {
    DocumentTree tree = parse_ok("");
    CHECK(tree.root.kind == YamlNode::Kind::Null);
}

TEST_CASE("parse_yaml rejects tab indentation with the offending line") {
    YamlParseResult result = parse_yaml("a:\n\tb: 1\n", "bad.yaml");
    CHECK(!result.tree.has_value());
    REQUIRE(result.finding.has_value());
    CHECK(result.finding->pattern == PatternId::YamlSyntax);
    CHECK(result.finding->level == Level::Error);
    CHECK(result.finding->location.file == "bad.yaml");
    CHECK(result.finding->location.line == 2);
}

TEST_CASE("parse_yaml rejects invalid UTF-8") {
    std::string text = "key: val";
    text.push_back(static_cast<char>(0xFF));
    YamlParseResult result = parse_yaml(text, "bad.yaml");
    CHECK(!result.tree.has_value());
    REQUIRE(result.finding.has_value());
    CHECK(result.finding->pattern == PatternId::YamlSyntax);
    CHECK(result.finding->location.line == 1);
}

TEST_CASE("serialize -> reparse preserves the structure") {
    DocumentTree tree = parse_ok(
        "PeerOrgs:\n"
        "  - Name: org\n"
        "    Domain: org.consortium.com\n"
        "    Specs:\n"
        "      - Hostname: company\n"
        "settings:\n"
        "  nested: value\n");
    DocumentTree again = parse_ok(serialize(tree.root));
    CHECK(structurally_equal(tree.root, again.root));
}

TEST_CASE("parse_crypto_config reads explicit Specs hostnames") {
    DocumentTree tree = parse_ok(
        "PeerOrgs:\n"
        "  - Name: org\n"
        "    Domain: org.consortium.com\n"
        "    Specs:\n"
        "      - Hostname: company\n");
    CryptoFragment fragment = parse_crypto_config(tree);
    CHECK(!fragment.empty_note);
    REQUIRE(fragment.orgs.size() == 1);
    CHECK(fragment.orgs[0].name == "org");
    CHECK(fragment.orgs[0].domain == "org.consortium.com");
    REQUIRE(fragment.orgs[0].peer_hostnames.size() == 1);
    CHECK(fragment.orgs[0].peer_hostnames[0] == "company");
}

TEST_CASE("parse_crypto_config expands Template.Count into peerN names") {
    DocumentTree tree = parse_ok(
        "PeerOrgs:\n"
        "  - Name: Org1\n"
        "    Domain: org1.example.com\n"
        "    Template:\n"
        "      Count: 2\n"
        "    Users:\n"
        "      Count: 1\n");
    CryptoFragment fragment = parse_crypto_config(tree);
    REQUIRE(fragment.orgs.size() == 1);
    CHECK(fragment.orgs[0].template_count == 2);
    CHECK(fragment.orgs[0].user_count == 1);
    REQUIRE(fragment.orgs[0].peer_hostnames.size() == 2);
    CHECK(fragment.orgs[0].peer_hostnames[0] == "peer0");
    CHECK(fragment.orgs[0].peer_hostnames[1] == "peer1");
}

TEST_CASE("parse_crypto_config flags a document without org sections") {
    CryptoFragment fragment = parse_crypto_config(parse_ok(""));
    CHECK(fragment.orgs.empty());
    CHECK(fragment.empty_note);

    fragment = parse_crypto_config(parse_ok("unrelated: true\n"));
    CHECK(fragment.empty_note);
}

TEST_CASE("parse_configtx reads the orderer profile") {
    DocumentTree tree = parse_ok(
        "Orderer:\n"
        "  OrdererType: solo\n"
        "  BatchTimeout: 2s\n"
        "  BatchSize:\n"
        "    MaxMessageCount: 10\n"
        "    AbsoluteMaxBytes: 99 MB\n"
        "    PreferredMaxBytes: 512 KB\n"
        "  Addresses:\n"
        "    - orderer.example.com:7050\n"
        "Organizations:\n"
        "  - Name: Org1\n"
        "    ID: Org1MSP\n");
    ConfigtxFragment fragment = parse_configtx(tree);
    CHECK(fragment.findings.empty());
    CHECK(fragment.orderer.consensus_type == ConsensusType::Solo);
    CHECK(fragment.orderer.batch_timeout_ms == 2000);
    CHECK(fragment.orderer.max_message_count == 10);
    CHECK(fragment.orderer.absolute_max_bytes == 99LL * 1024 * 1024);
    CHECK(fragment.orderer.preferred_max_bytes == 512LL * 1024);
    REQUIRE(fragment.orderer.orderer_addresses.size() == 1);
    REQUIRE(fragment.orgs.size() == 1);
    CHECK(fragment.orgs[0].name == "Org1");
    CHECK(fragment.orgs[0].msp_id == "Org1MSP");
}

TEST_CASE("parse_configtx reads etcdraft with several addresses") {
    DocumentTree tree = parse_ok(
        "Orderer:\n"
        "  OrdererType: etcdraft\n"
        "  Addresses:\n"
        "    - o1:7050\n"
        "    - o2:7050\n"
        "    - o3:7050\n"
        "    - o4:7050\n"
        "    - o5:7050\n");
    ConfigtxFragment fragment = parse_configtx(tree);
    CHECK(fragment.orderer.consensus_type == ConsensusType::EtcdRaft);
    CHECK(fragment.orderer.orderer_addresses.size() == 5);
    CHECK(!fragment.orderer.batch_timeout_ms.has_value());
}

TEST_CASE("parse_configtx reports a malformed BatchTimeout") {
    DocumentTree tree = parse_ok(
        "Orderer:\n"
        "  OrdererType: solo\n"
        "  BatchTimeout: soon\n");
    ConfigtxFragment fragment = parse_configtx(tree);
    CHECK(!fragment.orderer.batch_timeout_ms.has_value());
    REQUIRE(fragment.findings.size() == 1);
    CHECK(fragment.findings[0].pattern == PatternId::YamlSyntax);
    CHECK(fragment.findings[0].level == Level::Error);
    CHECK(fragment.findings[0].location.line == 3);
}

TEST_CASE("parse_configtx on an empty document leaves everything unset") {
    ConfigtxFragment fragment = parse_configtx(parse_ok(""));
    CHECK(fragment.orderer.consensus_type == ConsensusType::Unknown);
    CHECK(fragment.orgs.empty());
    CHECK(fragment.findings.empty());
}

TEST_CASE("parse_compose reads services with env lists and commands") {
    DocumentTree tree = parse_ok(
        "version: '2'\n"
        "services:\n"
        "  peer:\n"
        "    container_name: company:org.consortium.com\n"
        "    image: hyperledger/fabric-peer\n"
        "    environment:\n"
        "      - CORE_PEER_ID=auditor.org.consortium.com\n"
        "      - CORE_PEER_TLS_ENABLED=true\n"
        "    command: peer node start\n"
        "    volumes:\n"
        "      - /var/run/:/host/var/run/\n");
    ComposeFragment fragment = parse_compose(tree, kNoEnv);
    CHECK(fragment.findings.empty());
    REQUIRE(fragment.containers.size() == 1);
    const ContainerSpec& peer = fragment.containers[0];
    CHECK(peer.service_key == "peer");
    CHECK(peer.container_name == "company:org.consortium.com");
    CHECK(peer.display_name() == "company:org.consortium.com");
    REQUIRE(peer.env_value("CORE_PEER_ID") != nullptr);
    CHECK(peer.env_value("CORE_PEER_ID")->effective() ==
          "auditor.org.consortium.com");
    CHECK(peer.command == "peer node start");
    CHECK(peer.volumes.size() == 1);
}

TEST_CASE("parse_compose accepts the mapping environment form") {
    DocumentTree tree = parse_ok(
        "services:\n"
        "  db:\n"
        "    image: couchdb:2.3\n"
        "    environment:\n"
        "      COUCHDB_USER: admin\n"
        "      COUCHDB_PASSWORD: adminpw\n");
    ComposeFragment fragment = parse_compose(tree, kNoEnv);
    REQUIRE(fragment.containers.size() == 1);
    CHECK(fragment.containers[0].env_value("COUCHDB_USER")->effective() == "admin");
    CHECK(fragment.containers[0].env_value("COUCHDB_PASSWORD")->effective() ==
          "adminpw");
}

TEST_CASE("parse_compose rejects a document without services") {
    ComposeFragment fragment = parse_compose(parse_ok("version: '2'\n"), kNoEnv);
    CHECK(fragment.containers.empty());
    REQUIRE(fragment.findings.size() == 1);
    CHECK(fragment.findings[0].pattern == PatternId::ComposeSyntax);
    CHECK(fragment.findings[0].level == Level::Error);
}

TEST_CASE("parse_compose flags schema violations") {
    DocumentTree tree = parse_ok(
        "services:\n"
        "  a:\n"
        "    container_name: same\n"
        "    image: x\n"
        "  b:\n"
        "    container_name: same\n"
        "    image: x\n"
        "  c:\n"
        "    image: x\n"
        "    depends_on:\n"
        "      - missing\n"
        "  d:\n"
        "    container_name: d\n");
    ComposeFragment fragment = parse_compose(tree, kNoEnv);
    REQUIRE(fragment.findings.size() == 3);
    bool saw_duplicate = false, saw_dep = false, saw_image = false;
    for (const Finding& f : fragment.findings) {
        CHECK(f.pattern == PatternId::ComposeSyntax);
        if (f.message.find("duplicate container_name") != std::string::npos)
            saw_duplicate = true;
        if (f.message.find("undefined service 'missing'") != std::string::npos)
            saw_dep = true;
        if (f.message.find("neither image nor build") != std::string::npos)
            saw_image = true;
    }
    CHECK(saw_duplicate);
    CHECK(saw_dep);
    CHECK(saw_image);
}

TEST_CASE("parse_compose_files lets later files override services") {
    DocumentTree base = parse_ok(
        "services:\n"
        "  peer:\n"
        "    image: hyperledger/fabric-peer\n"
        "    environment:\n"
        "      - CORE_LEDGER_STATE_STATEDATABASE=LevelDB\n");
    DocumentTree overlay = parse_ok(
        "services:\n"
        "  peer:\n"
        "    image: hyperledger/fabric-peer\n"
        "    environment:\n"
        "      - CORE_LEDGER_STATE_STATEDATABASE=CouchDB\n"
        "  couchdb0:\n"
        "    image: couchdb:2.3\n");
    DocumentTree trees[] = {base, overlay};
    ComposeFragment fragment = parse_compose_files(trees, kNoEnv);
    REQUIRE(fragment.containers.size() == 2);
    CHECK(fragment.containers[0].service_key == "peer");
    CHECK(fragment.containers[0].env_value("CORE_LEDGER_STATE_STATEDATABASE")
              ->effective() == "CouchDB");
}

TEST_CASE("interpolate_env resolves references and defaults") {
    std::map<std::string, std::string> env{{"IMAGE_TAG", "1.4.4"}};

    EnvValue value = interpolate_env("hyperledger/fabric-peer:${IMAGE_TAG}", env);
    CHECK(!value.is_literal);
    CHECK(value.resolved == "hyperledger/fabric-peer:1.4.4");

    value = interpolate_env("${MISSING:-fallback}", env);
    CHECK(!value.is_literal);
    CHECK(value.resolved == "fallback");

    value = interpolate_env("${MISSING}", env);
    CHECK(!value.is_literal);
    CHECK(!value.resolved.has_value());
    CHECK(value.effective() == "${MISSING}");

    value = interpolate_env("plain", env);
    CHECK(value.is_literal);
    CHECK(value.resolved == "plain");
}

TEST_CASE("interpolation of a literal is the identity") {
    std::map<std::string, std::string> env{{"A", "x"}};
    for (const std::string raw : {"", "true", "couchdb0:5984", "a$b", "${unclosed"}) {
        EnvValue value = interpolate_env(raw, env);
        CHECK(value.is_literal);
        CHECK(value.resolved == raw);
    }
}

TEST_CASE("parse_duration_ms normalizes the usual suffixes") {
    CHECK(parse_duration_ms("2s") == 2000);
    CHECK(parse_duration_ms("500ms") == 500);
    CHECK(parse_duration_ms("1m") == 60000);
    CHECK(parse_duration_ms("1h") == 3600000);
    CHECK(parse_duration_ms("0.5s") == 500);
    CHECK(!parse_duration_ms("2x").has_value());
    CHECK(!parse_duration_ms("fast").has_value());
    CHECK(!parse_duration_ms("2").has_value());
}

TEST_CASE("parse_byte_size normalizes the usual suffixes") {
    CHECK(parse_byte_size("1024") == 1024);
    CHECK(parse_byte_size("512 KB") == 512LL * 1024);
    CHECK(parse_byte_size("99 MB") == 99LL * 1024 * 1024);
    CHECK(parse_byte_size("2GB") == 2LL * 1024 * 1024 * 1024);
    CHECK(!parse_byte_size("many").has_value());
}
