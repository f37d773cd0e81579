#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fablint {

struct ThresholdConfig;

enum class PrincipalRole { Member, Admin, Peer, Client, Unknown };

std::string_view to_string(PrincipalRole role);

/// One MSP principal, e.g. Org1MSP.member.
struct Principal {
    std::string msp_id;
    PrincipalRole role = PrincipalRole::Unknown;
    /// Role text as written, kept for unknown roles.
    std::string role_text;

    friend bool operator==(const Principal&, const Principal&) = default;
};

/// Endorsement-policy expression tree. And/Or are evaluated as
/// OutOf(n)/OutOf(1) respectively.
struct PolicyAst {
    enum class Kind { Signed, And, Or, OutOf };

    Kind kind = Kind::Signed;
    Principal principal;              // Kind::Signed
    int threshold = 0;                // Kind::OutOf
    std::vector<PolicyAst> children;  // And/Or/OutOf
};

struct PolicyParseError {
    std::size_t offset;  // byte offset of the first unexpected token
    std::string message;
};

using PolicyParseResult = std::variant<PolicyAst, PolicyParseError>;

/// Parses the `-P` flag syntax: AND/OR/OutOf (case-insensitive) over
/// quoted `MSP.role` principals; OutOf takes a leading integer argument.
PolicyParseResult parse_policy(std::string_view text);

/// Result of a minimal-cost computation. `exact` is false only on the
/// structural fallback for policies with more than 20 distinct principals,
/// where repeated principals across branches can inflate the estimate.
struct MinResult {
    int value = 0;
    bool exact = true;
    std::optional<std::string> note;
};

/// Size of the smallest principal set satisfying the policy.
MinResult min_signers(const PolicyAst& ast);

/// Smallest number of distinct MSP identities in any satisfying set.
MinResult min_orgs(const PolicyAst& ast);

/// Nesting depth; a bare principal has depth 0.
int policy_depth(const PolicyAst& ast);

/// Distinct principals of the tree, in first-appearance order.
std::vector<Principal> distinct_principals(const PolicyAst& ast);

enum class PolicyClass { Simple, Moderate, Complex };

std::string_view to_string(PolicyClass cls);

/// Simple iff a single organization can satisfy the policy (this takes
/// precedence); Complex iff min_signers or nesting depth reach the
/// configured bounds; Moderate otherwise.
PolicyClass classify(const PolicyAst& ast, const ThresholdConfig& thresholds);

}  // namespace fablint
