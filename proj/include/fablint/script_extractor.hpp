#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fablint/model.hpp"

namespace fablint {

/// One recognized command, tokenized with quotes stripped and
/// continuation lines joined.
struct CommandInvocation {
    std::vector<std::string> argv;
    int line = 0;  // 1-based line of the command start
    std::string raw;

    // Straight-line variable context in effect at this command, from
    // preceding assignments/exports or an env prefix on the command itself.
    std::optional<std::string> peer_address;
    std::optional<std::string> local_msp_id;

    std::optional<std::string> flag_value(std::string_view flag) const;
};

struct ScriptExtraction {
    std::vector<CommandInvocation> invocations;
    std::vector<std::string> parse_notes;  // e.g. unbalanced quotes
};

/// Statically extracts every simple command whose first token is one of
/// peer, configtxgen, cryptogen, docker, docker-compose. Commands inside
/// function bodies and unexecuted branches are included; comments and
/// here-docs are skipped. Nothing is executed.
ScriptExtraction extract_commands(std::string_view text,
                                  const std::string& path = "");

/// Chaincode install/instantiate/upgrade commands folded into deployments.
std::vector<ChaincodeDeployment> extract_chaincode_deployments(
    const std::vector<CommandInvocation>& invocations,
    const std::string& path = "");

struct ChannelOps {
    std::vector<ChannelSpec> channels;
    /// -channelID values from configtxgen invocations.
    std::vector<std::string> declared_channel_ids;
};

/// Channel create/join and anchor-update operations.
ChannelOps extract_channel_ops(const std::vector<CommandInvocation>& invocations,
                               const std::string& path = "");

}  // namespace fablint
