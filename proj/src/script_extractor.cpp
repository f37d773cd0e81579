#include "fablint/script_extractor.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace fablint {
namespace {

constexpr std::array<std::string_view, 5> kCommandFamilies = {
    "peer", "configtxgen", "cryptogen", "docker", "docker-compose"};

constexpr std::array<std::string_view, 13> kControlWords = {
    "if", "then", "else", "elif", "fi", "for", "while",
    "until", "do", "done", "in", "{", "}"};

bool is_family(std::string_view token) {
    return std::find(kCommandFamilies.begin(), kCommandFamilies.end(), token) !=
           kCommandFamilies.end();
}

bool is_control_word(std::string_view token) {
    return std::find(kControlWords.begin(), kControlWords.end(), token) !=
           kControlWords.end();
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// VAR=value shape, used for env prefixes and straight-line assignments.
bool split_assignment(std::string_view token, std::string& name,
                      std::string& value) {
    auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) return false;
    for (std::size_t i = 0; i < eq; ++i)
        if (!is_name_char(token[i])) return false;
    if (std::isdigit(static_cast<unsigned char>(token[0]))) return false;
    name = std::string(token.substr(0, eq));
    value = std::string(token.substr(eq + 1));
    return true;
}

struct Token {
    std::string text;
    bool ok = true;  // false: unbalanced quote, line abandoned
};

// Tokenizes one logical line (continuations already joined). Splits on
// the command separators ; && || | & into sub-command token groups.
std::vector<std::vector<std::string>> tokenize_line(std::string_view line,
                                                    bool& unbalanced) {
    std::vector<std::vector<std::string>> commands(1);
    std::string current;
    bool in_word = false;
    unbalanced = false;

    auto flush_word = [&] {
        if (in_word) {
            commands.back().push_back(current);
            current.clear();
            in_word = false;
        }
    };
    auto flush_command = [&] {
        flush_word();
        if (!commands.back().empty()) commands.emplace_back();
    };

    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '\'' || c == '"') {
            auto close = line.find(c, i + 1);
            if (close == std::string_view::npos) {
                unbalanced = true;
                break;
            }
            current += line.substr(i + 1, close - i - 1);
            in_word = true;
            i = close + 1;
        } else if (c == '#' && !in_word) {
            break;  // comment to end of line
        } else if (c == ';' || c == '&' || c == '|') {
            flush_command();
            while (i < line.size() && (line[i] == ';' || line[i] == '&' || line[i] == '|'))
                ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            flush_word();
            ++i;
        } else {
            current.push_back(c);
            in_word = true;
            ++i;
        }
    }
    flush_word();
    if (commands.back().empty()) commands.pop_back();
    return commands;
}

std::string org_from_anchor_filename(std::string_view file) {
    auto slash = file.rfind('/');
    std::string_view base =
        slash == std::string_view::npos ? file : file.substr(slash + 1);
    auto pos = base.find("anchors");
    if (pos == std::string_view::npos) pos = base.find("anchor");
    if (pos == std::string_view::npos || pos == 0) return "";
    return std::string(base.substr(0, pos));
}

ChannelSpec* channel_by_name(std::vector<ChannelSpec>& channels,
                             std::string_view name) {
    for (auto& channel : channels)
        if (channel.name == name) return &channel;
    return nullptr;
}

void add_unique(std::vector<std::string>& list, const std::string& value) {
    if (!value.empty() &&
        std::find(list.begin(), list.end(), value) == list.end())
        list.push_back(value);
}

}  // namespace

std::optional<std::string> CommandInvocation::flag_value(
    std::string_view flag) const {
    for (std::size_t i = 0; i + 1 < argv.size(); ++i)
        if (argv[i] == flag) return argv[i + 1];
    // --flag=value form
    std::string prefix = std::string(flag) + "=";
    for (const auto& arg : argv)
        if (arg.rfind(prefix, 0) == 0) return arg.substr(prefix.size());
    return std::nullopt;
}

ScriptExtraction extract_commands(std::string_view text,
                                  const std::string& path) {
    ScriptExtraction result;
    std::optional<std::string> peer_address;
    std::optional<std::string> local_msp_id;
    std::optional<std::string> heredoc_end;

    std::istringstream stream{std::string(text)};
    std::string physical;
    int line_number = 0;
    while (std::getline(stream, physical)) {
        ++line_number;
        int start_line = line_number;

        if (heredoc_end) {
            std::string trimmed = physical;
            while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
                trimmed.erase(trimmed.begin());
            if (trimmed == *heredoc_end) heredoc_end = std::nullopt;
            continue;
        }

        // Join continuation lines before tokenizing.
        std::string logical = physical;
        while (!logical.empty() && logical.back() == '\\') {
            logical.pop_back();
            if (!std::getline(stream, physical)) break;
            ++line_number;
            logical += ' ';
            logical += physical;
        }

        bool unbalanced = false;
        auto commands = tokenize_line(logical, unbalanced);
        if (unbalanced) {
            result.parse_notes.push_back(
                path + ":" + std::to_string(start_line) + ": unbalanced quote");
            continue;  // the truncated tokens would misattribute flags
        }

        // Here-doc start: skip body lines until the delimiter.
        if (auto pos = logical.find("<<"); pos != std::string::npos &&
                                           logical.compare(pos, 3, "<<<") != 0) {
            std::string delim = logical.substr(pos + 2);
            while (!delim.empty() && (delim.front() == '-' || delim.front() == ' ' ||
                                      delim.front() == '\'' || delim.front() == '"'))
                delim.erase(delim.begin());
            auto end = delim.find_first_of(" \t'\"");
            if (end != std::string::npos) delim.resize(end);
            if (!delim.empty()) heredoc_end = delim;
        }

        for (auto& tokens : commands) {
            // Strip leading control keywords (if peer ...; then) and record
            // env prefixes / straight-line assignments.
            std::size_t first = 0;
            while (first < tokens.size() && is_control_word(tokens[first])) ++first;

            std::string name, value;
            while (first < tokens.size() &&
                   (tokens[first] == "export" ||
                    split_assignment(tokens[first], name, value))) {
                if (tokens[first] != "export") {
                    if (name == "CORE_PEER_ADDRESS") peer_address = value;
                    if (name == "CORE_PEER_LOCALMSPID") local_msp_id = value;
                }
                ++first;
            }
            if (first >= tokens.size()) continue;
            if (!is_family(tokens[first])) continue;

            CommandInvocation invocation;
            invocation.argv.assign(tokens.begin() + first, tokens.end());
            invocation.line = start_line;
            invocation.raw = logical;
            invocation.peer_address = peer_address;
            invocation.local_msp_id = local_msp_id;
            result.invocations.push_back(std::move(invocation));
        }
    }
    return result;
}

std::vector<ChaincodeDeployment> extract_chaincode_deployments(
    const std::vector<CommandInvocation>& invocations, const std::string& path) {
    std::vector<ChaincodeDeployment> deployments;

    auto deployment_for = [&](const std::string& name,
                              const std::optional<std::string>& channel)
        -> ChaincodeDeployment& {
        for (auto& d : deployments)
            if (d.name == name && (d.channel == channel || !d.channel || !channel)) {
                if (!d.channel) d.channel = channel;
                return d;
            }
        deployments.push_back(ChaincodeDeployment{});
        deployments.back().name = name;
        deployments.back().channel = channel;
        return deployments.back();
    };

    for (const auto& inv : invocations) {
        if (inv.argv.size() < 3 || inv.argv[0] != "peer" ||
            inv.argv[1] != "chaincode")
            continue;
        const std::string& verb = inv.argv[2];
        auto name = inv.flag_value("-n");
        if (!name) continue;

        if (verb == "install") {
            auto& deployment = deployment_for(*name, std::nullopt);
            if (deployment.location.file.empty()) {
                deployment.location.file = path;
                deployment.location.line = inv.line;
            }
            std::string target = inv.peer_address
                                     ? *inv.peer_address
                                     : "peer@line" + std::to_string(inv.line);
            add_unique(deployment.install_targets, target);
        } else if (verb == "instantiate" || verb == "upgrade") {
            auto& deployment = deployment_for(*name, inv.flag_value("-C"));
            deployment.location.file = path;
            deployment.location.line = inv.line;
            if (auto policy = inv.flag_value("-P")) deployment.policy_raw = policy;
        }
    }
    return deployments;
}

ChannelOps extract_channel_ops(const std::vector<CommandInvocation>& invocations,
                               const std::string& path) {
    ChannelOps ops;

    for (const auto& inv : invocations) {
        if (inv.argv[0] == "configtxgen") {
            if (auto id = inv.flag_value("-channelID"))
                add_unique(ops.declared_channel_ids, *id);
            continue;
        }
        if (inv.argv.size() < 3 || inv.argv[0] != "peer" || inv.argv[1] != "channel")
            continue;
        const std::string& verb = inv.argv[2];

        if (verb == "create") {
            auto name = inv.flag_value("-c");
            if (!name) continue;
            if (!channel_by_name(ops.channels, *name)) {
                ChannelSpec channel;
                channel.name = *name;
                channel.location.file = path;
                channel.location.line = inv.line;
                ops.channels.push_back(std::move(channel));
            }
        } else if (verb == "join") {
            // Channel inferred from the block file stem (mychannel.block).
            std::string name;
            if (auto block = inv.flag_value("-b")) {
                auto slash = block->rfind('/');
                std::string base =
                    slash == std::string::npos ? *block : block->substr(slash + 1);
                if (auto dot = base.find('.'); dot != std::string::npos)
                    base.resize(dot);
                name = base;
            } else if (ops.channels.size() == 1) {
                name = ops.channels.front().name;
            }
            if (ChannelSpec* channel = channel_by_name(ops.channels, name)) {
                if (inv.local_msp_id)
                    add_unique(channel->member_orgs, *inv.local_msp_id);
                else if (inv.peer_address)
                    add_unique(channel->member_orgs, *inv.peer_address);
            }
        } else if (verb == "update") {
            auto file = inv.flag_value("-f");
            if (!file || file->find("anchor") == std::string::npos) continue;
            auto name = inv.flag_value("-c");
            if (!name) continue;
            if (!channel_by_name(ops.channels, *name)) {
                ChannelSpec channel;
                channel.name = *name;
                channel.location.file = path;
                channel.location.line = inv.line;
                ops.channels.push_back(std::move(channel));
            }
            ChannelSpec* channel = channel_by_name(ops.channels, *name);
            std::string org = inv.local_msp_id ? *inv.local_msp_id
                                               : org_from_anchor_filename(*file);
            add_unique(channel->anchor_update_orgs, org);
            if (!org.empty()) add_unique(channel->member_orgs, org);
        }
    }
    return ops;
}

}  // namespace fablint
