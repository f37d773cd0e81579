#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fablint/report.hpp"
#include "fablint/scanner.hpp"

using namespace fablint;
namespace fs = std::filesystem;

namespace {

const std::string kCorpusDir = FABLINT_FIXTURE_DIR "/corpus";

/// Temporary directory removed at scope exit.
struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() /
               ("fablint-test-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }

    void write(const std::string& relative, const std::string& content) const {
        fs::path file = path / relative;
        fs::create_directories(file.parent_path());
        std::ofstream out(file, std::ios::binary);
        out << content;
    }

    static int& counter() {
        static int n = 0;
        return n;
    }
};

int count_pattern(const std::vector<Finding>& findings, PatternId id) {
    int n = 0;
    for (const Finding& f : findings)
        if (f.pattern == id) ++n;
    return n;
}

}  // namespace

TEST_CASE("discover_files assigns all five roles on a full network") {
    SourcesMap sources = discover_files(kCorpusDir + "/clean_network");
    REQUIRE(sources.count(FileRole::CryptoConfig) == 1);
    CHECK(sources[FileRole::CryptoConfig] ==
          std::vector<std::string>{"crypto-config.yaml"});
    CHECK(sources[FileRole::Configtx] == std::vector<std::string>{"configtx.yaml"});
    CHECK(sources[FileRole::Compose] ==
          std::vector<std::string>{"docker-compose.yaml"});
    CHECK(sources[FileRole::StartScript] == std::vector<std::string>{"start.sh"});
    CHECK(sources[FileRole::ChannelScript] ==
          std::vector<std::string>{"scripts/script.sh"});
}

TEST_CASE("discover_files on an empty or missing directory finds nothing") {
    TempDir dir;
    CHECK(discover_files(dir.path.string()).empty());
    CHECK(discover_files((dir.path / "missing").string()).empty());
}

TEST_CASE("discovery covers variants but stays above three levels deep") {
    TempDir dir;
    dir.write("docker-compose-couch.yml", "services: {}\n");
    dir.write("nested/configtx.yaml", "");
    dir.write("a/b/c/d/crypto-config.yaml", "");  // too deep
    dir.write("scripts/utils.sh", "");
    dir.write("other/readme.txt", "");

    SourcesMap sources = discover_files(dir.path.string());
    CHECK(sources[FileRole::Compose] ==
          std::vector<std::string>{"docker-compose-couch.yml"});
    CHECK(sources[FileRole::Configtx] ==
          std::vector<std::string>{"nested/configtx.yaml"});
    CHECK(sources.count(FileRole::CryptoConfig) == 0);
    CHECK(sources[FileRole::ChannelScript] ==
          std::vector<std::string>{"scripts/utils.sh"});
}

TEST_CASE("start.sh outranks other top-level scripts") {
    TempDir dir;
    dir.write("aaa.sh", "");
    dir.write("start.sh", "");
    dir.write("byfn.sh", "");
    SourcesMap sources = discover_files(dir.path.string());
    REQUIRE(sources[FileRole::StartScript].size() == 3);
    CHECK(sources[FileRole::StartScript][0] == "start.sh");
    CHECK(sources[FileRole::StartScript][1] == "byfn.sh");
    CHECK(sources[FileRole::StartScript][2] == "aaa.sh");
}

TEST_CASE("scan_network on the clean fixture yields only Info notes") {
    ScanResult result = scan_network(kCorpusDir + "/clean_network", {}, {});
    CHECK(result.model.orgs.size() == 3);
    CHECK(result.model.containers.size() == 5);
    CHECK(result.model.orderer.has_value());
    CHECK(result.model.chaincodes.size() == 1);
    CHECK(result.model.channels.size() == 1);

    LevelCounts counts = count_levels(result.findings);
    CHECK(counts.error == 0);
    CHECK(counts.warning == 0);
    CHECK(counts.info > 0);
}

TEST_CASE("every model entity points back at a scanned file") {
    ScanResult result = scan_network(kCorpusDir + "/clean_network", {}, {});
    std::vector<std::string> files;
    for (const auto& [role, paths] : result.model.sources)
        files.insert(files.end(), paths.begin(), paths.end());

    auto known = [&](const SourceLocation& loc) {
        return std::find(files.begin(), files.end(), loc.file) != files.end();
    };
    for (const auto& org : result.model.orgs) CHECK(known(org.location));
    for (const auto& c : result.model.containers) CHECK(known(c.location));
    for (const auto& cc : result.model.chaincodes) CHECK(known(cc.location));
    for (const auto& ch : result.model.channels) CHECK(known(ch.location));
}

TEST_CASE("later compose files override earlier service definitions") {
    TempDir dir;
    dir.write("docker-compose.yaml",
              "services:\n"
              "  peer0.org1.example.com:\n"
              "    image: hyperledger/fabric-peer:1.4\n"
              "    environment:\n"
              "      - CORE_PEER_TLS_ENABLED=true\n"
              "      - CORE_PEER_TLS_CLIENTAUTHREQUIRED=true\n");
    dir.write("docker-compose-couch.yaml",
              "services:\n"
              "  peer0.org1.example.com:\n"
              "    image: hyperledger/fabric-peer:1.4\n"
              "    environment:\n"
              "      - CORE_PEER_TLS_ENABLED=true\n"
              "      - CORE_PEER_TLS_CLIENTAUTHREQUIRED=true\n"
              "      - CORE_LEDGER_STATE_STATEDATABASE=CouchDB\n"
              "      - CORE_LEDGER_STATE_COUCHDBCONFIG_COUCHDBADDRESS=couchdb0:5984\n"
              "      - CORE_LEDGER_STATE_COUCHDBCONFIG_USERNAME=admin\n"
              "      - CORE_LEDGER_STATE_COUCHDBCONFIG_PASSWORD=adminpw\n"
              "  couchdb0:\n"
              "    image: couchdb:2.3\n"
              "    environment:\n"
              "      - COUCHDB_USER=admin\n"
              "      - COUCHDB_PASSWORD=adminpw\n");

    ScanResult result = scan_network(dir.path.string(), {}, {});
    REQUIRE(result.model.state_dbs.size() == 1);
    CHECK(result.model.state_dbs[0].kind == StateDbKind::CouchDb);
    CHECK(count_pattern(result.findings, PatternId::ComponentMissing) == 0);
    CHECK(count_pattern(result.findings, PatternId::StateDbSecurity) == 0);
}

TEST_CASE("explicit file overrides beat discovery") {
    TempDir dir;
    dir.write("docker-compose.yaml",
              "services:\n"
              "  cli:\n"
              "    image: hyperledger/fabric-tools\n"
              "    environment:\n"
              "      - CORE_PEER_TLS_ENABLED=false\n");
    dir.write("alt-compose.yaml",
              "services:\n"
              "  cli:\n"
              "    image: hyperledger/fabric-tools\n"
              "    environment:\n"
              "      - CORE_PEER_TLS_ENABLED=true\n"
              "      - CORE_PEER_TLS_CLIENTAUTHREQUIRED=true\n");

    ScanResult discovered = scan_network(dir.path.string(), {}, {});
    CHECK(count_pattern(discovered.findings, PatternId::TlsOnOff) == 1);

    FileOverrides overrides;
    overrides.compose = {"alt-compose.yaml"};
    ScanResult overridden = scan_network(dir.path.string(), {}, {}, overrides);
    CHECK(count_pattern(overridden.findings, PatternId::TlsOnOff) == 0);
}

TEST_CASE("host environment variables feed compose interpolation") {
    TempDir dir;
    dir.write("docker-compose.yaml",
              "services:\n"
              "  cli:\n"
              "    image: hyperledger/fabric-tools\n"
              "    environment:\n"
              "      - CORE_PEER_TLS_ENABLED=${TLS_ON}\n");

    ScanResult unresolved = scan_network(dir.path.string(), {}, {});
    CHECK(count_pattern(unresolved.findings, PatternId::TlsOnOff) == 0);

    ScanResult off = scan_network(dir.path.string(), {}, {{"TLS_ON", "false"}});
    CHECK(count_pattern(off.findings, PatternId::TlsOnOff) == 1);
}

TEST_CASE("threshold config files adjust the judgment bounds") {
    TempDir dir;
    dir.write("fabriclint.yaml",
              "batch_timeout_max_ms: 120000\n"
              "complex_min_signers: 6\n");
    auto loaded = load_threshold_config((dir.path / "fabriclint.yaml").string());
    REQUIRE(std::holds_alternative<LintConfig>(loaded));
    const LintConfig& config = std::get<LintConfig>(loaded);
    CHECK(config.thresholds.batch_timeout_max_ms == 120000);
    CHECK(config.thresholds.complex_min_signers == 6);
    CHECK(config.thresholds.batch_timeout_min_ms == 200);  // default kept
    CHECK(config.disabled.empty());
}

TEST_CASE("the disable list maps pattern keys to ids") {
    TempDir dir;
    dir.write("fabriclint.yaml",
              "disable:\n"
              "  - tls_onoff\n"
              "  - state_db_choice\n");
    auto loaded = load_threshold_config((dir.path / "fabriclint.yaml").string());
    REQUIRE(std::holds_alternative<LintConfig>(loaded));
    const auto& disabled = std::get<LintConfig>(loaded).disabled;
    CHECK(disabled.count(PatternId::TlsOnOff) == 1);
    CHECK(disabled.count(PatternId::StateDbChoice) == 1);
    CHECK(disabled.size() == 2);
}

TEST_CASE("bad threshold configs are rejected with a named cause") {
    TempDir dir;

    dir.write("unknown.yaml", "no_such_key: 5\n");
    auto loaded = load_threshold_config((dir.path / "unknown.yaml").string());
    REQUIRE(std::holds_alternative<std::string>(loaded));
    CHECK(std::get<std::string>(loaded).find("no_such_key") != std::string::npos);

    dir.write("badpattern.yaml", "disable:\n  - no_such_pattern\n");
    loaded = load_threshold_config((dir.path / "badpattern.yaml").string());
    REQUIRE(std::holds_alternative<std::string>(loaded));

    dir.write("badint.yaml", "batch_timeout_max_ms: soon\n");
    loaded = load_threshold_config((dir.path / "badint.yaml").string());
    REQUIRE(std::holds_alternative<std::string>(loaded));

    dir.write("badbounds.yaml", "batch_timeout_max_ms: 100\n");  // below min
    loaded = load_threshold_config((dir.path / "badbounds.yaml").string());
    REQUIRE(std::holds_alternative<std::string>(loaded));
    CHECK(std::get<std::string>(loaded).find("batch_timeout_max_ms") !=
          std::string::npos);

    loaded = load_threshold_config((dir.path / "missing.yaml").string());
    REQUIRE(std::holds_alternative<std::string>(loaded));
}

TEST_CASE("disabled patterns are excluded from scan findings") {
    LintConfig config;
    config.disabled.insert(PatternId::TlsOnOff);
    ScanResult result =
        scan_network(kCorpusDir + "/defect_tls_onoff", config, {});
    CHECK(count_pattern(result.findings, PatternId::TlsOnOff) == 0);

    ScanResult enabled = scan_network(kCorpusDir + "/defect_tls_onoff", {}, {});
    CHECK(count_pattern(enabled.findings, PatternId::TlsOnOff) == 1);
}

TEST_CASE("a directory with no recognizable files scans to an empty report") {
    TempDir dir;
    dir.write("readme.txt", "nothing to see");
    ScanResult result = scan_network(dir.path.string(), {}, {});
    CHECK(result.model.containers.empty());
    CHECK(result.findings.empty());
}

TEST_CASE("run_scan writes the report to the requested file") {
    TempDir dir;
    dir.write("network/docker-compose.yaml",
              "services:\n"
              "  cli:\n"
              "    image: hyperledger/fabric-tools\n"
              "    environment:\n"
              "      - CORE_PEER_TLS_ENABLED=false\n");

    ScanOptions options;
    options.network_dir = (dir.path / "network").string();
    options.format = ReportFormat::Json;
    options.output_path = (dir.path / "report.json").string();
    options.fail_on = FailOn::Error;
    CHECK(run_scan(options) == 0);  // warnings do not gate on fail_on=error

    std::ifstream in(dir.path / "report.json");
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    auto findings = findings_from_json(text);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].pattern == PatternId::TlsOnOff);

    options.fail_on = FailOn::Warning;
    CHECK(run_scan(options) == 1);
}
