#include <cstdlib>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "fablint/scanner.hpp"

extern char** environ;

namespace {

std::map<std::string, std::string> host_environment() {
    std::map<std::string, std::string> env;
    for (char** entry = environ; entry && *entry; ++entry) {
        std::string pair(*entry);
        auto eq = pair.find('=');
        if (eq != std::string::npos)
            env[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    return env;
}

void add_common_options(CLI::App* cmd, fablint::ScanOptions& options,
                        std::string& format, std::string& fail_on) {
    cmd->add_option("dir", options.network_dir, "network directory")->required();
    cmd->add_option("--format", format, "report format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", options.output_path, "write the report to a file");
    cmd->add_option("--config", options.config_path,
                    "threshold / pattern configuration file");
    cmd->add_option("--fail-on", fail_on, "gate level: error|warning|never")
        ->check(CLI::IsMember({"error", "warning", "never"}));
    cmd->add_option("--compose", options.overrides.compose,
                    "explicit compose file (repeatable)");
    cmd->add_option("--crypto", options.overrides.crypto,
                    "explicit crypto-config file");
    cmd->add_option("--configtx", options.overrides.configtx,
                    "explicit configtx file");
    cmd->add_option("--script", options.overrides.scripts,
                    "explicit bootstrap script (repeatable)");
}

void apply_choices(fablint::ScanOptions& options, const std::string& format,
                   const std::string& fail_on) {
    options.format = format == "json" ? fablint::ReportFormat::Json
                                      : fablint::ReportFormat::Text;
    if (fail_on == "warning")
        options.fail_on = fablint::FailOn::Warning;
    else if (fail_on == "never")
        options.fail_on = fablint::FailOn::Never;
    else
        options.fail_on = fablint::FailOn::Error;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fabriclint - reasonableness checks for Hyperledger Fabric network "
        "configurations"};
    app.require_subcommand(1);

    fablint::ScanOptions scan_options;
    std::string scan_format = "text";
    std::string scan_fail_on = "error";
    CLI::App* scan = app.add_subcommand("scan", "lint one network directory");
    add_common_options(scan, scan_options, scan_format, scan_fail_on);

    fablint::ScanOptions corpus_options;
    std::string corpus_format = "text";
    std::string corpus_fail_on = "never";
    CLI::App* corpus = app.add_subcommand(
        "corpus", "aggregate per-pattern counts over many networks");
    add_common_options(corpus, corpus_options, corpus_format, corpus_fail_on);

    CLI11_PARSE(app, argc, argv);

    if (scan->parsed()) {
        apply_choices(scan_options, scan_format, scan_fail_on);
        scan_options.host_env = host_environment();
        return fablint::run_scan(scan_options);
    }
    apply_choices(corpus_options, corpus_format, corpus_fail_on);
    corpus_options.host_env = host_environment();
    return fablint::run_corpus(corpus_options);
}
