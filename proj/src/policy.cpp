#include "fablint/policy.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>

#include "fablint/model.hpp"

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

PrincipalRole role_from_text(std::string_view text) {
    if (iequals(text, "member")) return PrincipalRole::Member;
    if (iequals(text, "admin")) return PrincipalRole::Admin;
    if (iequals(text, "peer")) return PrincipalRole::Peer;
    if (iequals(text, "client")) return PrincipalRole::Client;
    return PrincipalRole::Unknown;
}

class PolicyParser {
public:
    explicit PolicyParser(std::string_view text) : text_(text) {}

    PolicyParseResult parse() {
        skip_ws();
        auto expr = parse_expr();
        if (std::holds_alternative<PolicyParseError>(expr)) return expr;
        skip_ws();
        if (pos_ != text_.size())
            return error("trailing characters after policy expression");
        return expr;
    }

private:
    PolicyParseResult parse_expr() {
        skip_ws();
        if (pos_ >= text_.size()) return error("unexpected end of policy");
        char c = text_[pos_];
        if (c == '\'' || c == '"') return parse_principal();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_call();
        return error("expected function name or quoted principal");
    }

    PolicyParseResult parse_call() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        PolicyAst node;
        if (iequals(name, "AND"))
            node.kind = PolicyAst::Kind::And;
        else if (iequals(name, "OR"))
            node.kind = PolicyAst::Kind::Or;
        else if (iequals(name, "OutOf"))
            node.kind = PolicyAst::Kind::OutOf;
        else {
            pos_ = start;
            return error("unknown policy function");
        }

        skip_ws();
        if (!consume('(')) return error("expected '('");

        if (node.kind == PolicyAst::Kind::OutOf) {
            skip_ws();
            std::size_t num_start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == num_start) {
                pos_ = num_start;
                return error("OutOf requires an integer threshold");
            }
            node.threshold = std::stoi(std::string(text_.substr(num_start, pos_ - num_start)));
            skip_ws();
            if (!consume(',')) return error("expected ',' after OutOf threshold");
        }

        while (true) {
            auto child = parse_expr();
            if (auto* err = std::get_if<PolicyParseError>(&child)) return *err;
            node.children.push_back(std::move(std::get<PolicyAst>(child)));
            skip_ws();
            if (consume(',')) continue;
            if (consume(')')) break;
            return error("expected ',' or ')'");
        }

        if (node.children.empty()) return error("empty argument list");
        if (node.kind == PolicyAst::Kind::OutOf &&
            (node.threshold < 1 ||
             node.threshold > static_cast<int>(node.children.size())))
            return error("OutOf threshold out of range");
        return node;
    }

    PolicyParseResult parse_principal() {
        char quote = text_[pos_];
        std::size_t start = pos_++;
        std::size_t body = pos_;
        while (pos_ < text_.size() && text_[pos_] != quote) ++pos_;
        if (pos_ >= text_.size()) {
            pos_ = start;
            return error("unterminated quoted principal");
        }
        std::string_view inner = text_.substr(body, pos_ - body);
        ++pos_;  // closing quote

        auto dot = inner.rfind('.');
        PolicyAst node;
        node.kind = PolicyAst::Kind::Signed;
        if (dot == std::string_view::npos) {
            node.principal.msp_id = std::string(inner);
            node.principal.role = PrincipalRole::Unknown;
        } else {
            node.principal.msp_id = std::string(inner.substr(0, dot));
            node.principal.role_text = std::string(inner.substr(dot + 1));
            node.principal.role = role_from_text(node.principal.role_text);
        }
        if (node.principal.msp_id.empty()) {
            pos_ = start;
            return error("principal has empty MSP id");
        }
        return node;
    }

    PolicyParseError error(std::string message) const {
        return PolicyParseError{pos_, std::move(message)};
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string principal_key(const Principal& p) {
    std::string key = p.msp_id;
    key.push_back('\x1f');
    key += p.role == PrincipalRole::Unknown ? p.role_text
                                            : std::string(to_string(p.role));
    return key;
}

void collect_principals(const PolicyAst& ast, std::vector<Principal>& out,
                        std::vector<std::string>& keys) {
    if (ast.kind == PolicyAst::Kind::Signed) {
        std::string key = principal_key(ast.principal);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(std::move(key));
            out.push_back(ast.principal);
        }
        return;
    }
    for (const auto& child : ast.children) collect_principals(child, out, keys);
}

int effective_threshold(const PolicyAst& ast) {
    switch (ast.kind) {
        case PolicyAst::Kind::And: return static_cast<int>(ast.children.size());
        case PolicyAst::Kind::Or: return 1;
        case PolicyAst::Kind::OutOf: return ast.threshold;
        case PolicyAst::Kind::Signed: return 0;
    }
    return 0;
}

using Mask = std::uint32_t;

// Removes masks that are supersets of another mask in the list.
void prune_minimal(std::vector<Mask>& sets) {
    std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Mask> kept;
    for (Mask candidate : sets) {
        bool dominated = false;
        for (Mask small : kept) {
            if ((candidate & small) == small) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(candidate);
    }
    sets = std::move(kept);
}

inline constexpr std::size_t kMinimalSetCap = 20000;

// Bottom-up minimal satisfying principal sets, as bitmasks over the
// distinct-principal index. Returns false on combinatorial overflow.
bool minimal_sets(const PolicyAst& ast,
                  const std::vector<std::string>& keys,
                  std::vector<Mask>& out) {
    if (ast.kind == PolicyAst::Kind::Signed) {
        auto it = std::find(keys.begin(), keys.end(), principal_key(ast.principal));
        out = {Mask{1} << (it - keys.begin())};
        return true;
    }

    int k = effective_threshold(ast);
    std::vector<std::vector<Mask>> child_sets(ast.children.size());
    for (std::size_t i = 0; i < ast.children.size(); ++i)
        if (!minimal_sets(ast.children[i], keys, child_sets[i])) return false;

    // rows[j] = minimal masks satisfying at least j children seen so far.
    std::vector<std::vector<Mask>> rows(static_cast<std::size_t>(k) + 1);
    rows[0] = {Mask{0}};
    for (const auto& cs : child_sets) {
        for (int j = std::min<int>(k, static_cast<int>(&cs - &child_sets[0]) + 1); j >= 1; --j) {
            for (Mask base : rows[j - 1])
                for (Mask add : cs) rows[j].push_back(base | add);
            prune_minimal(rows[j]);
            if (rows[j].size() > kMinimalSetCap) return false;
        }
    }
    out = std::move(rows[static_cast<std::size_t>(k)]);
    return !out.empty();
}

// Structural estimate used beyond the 20-principal guard. Exact for
// trees whose principals do not repeat across branches.
int structural_min(const PolicyAst& ast, bool orgs) {
    if (ast.kind == PolicyAst::Kind::Signed) return 1;
    std::vector<int> child_values;
    child_values.reserve(ast.children.size());
    for (const auto& child : ast.children)
        child_values.push_back(structural_min(child, orgs));
    std::sort(child_values.begin(), child_values.end());
    int k = effective_threshold(ast);
    if (ast.kind == PolicyAst::Kind::Or) return child_values.front();
    return std::accumulate(child_values.begin(), child_values.begin() + k, 0);
}

MinResult compute_min(const PolicyAst& ast, bool orgs) {
    std::vector<Principal> principals;
    std::vector<std::string> keys;
    collect_principals(ast, principals, keys);
    const std::size_t n = principals.size();

    if (n <= 20) {
        std::vector<Mask> sets;
        if (minimal_sets(ast, keys, sets)) {
            int best = static_cast<int>(n) + 1;
            for (Mask m : sets) {
                int cost;
                if (orgs) {
                    std::vector<std::string_view> seen;
                    for (std::size_t i = 0; i < n; ++i)
                        if (m & (Mask{1} << i)) {
                            std::string_view msp = principals[i].msp_id;
                            if (std::find(seen.begin(), seen.end(), msp) == seen.end())
                                seen.push_back(msp);
                        }
                    cost = static_cast<int>(seen.size());
                } else {
                    cost = std::popcount(m);
                }
                best = std::min(best, cost);
            }
            return MinResult{best, true, std::nullopt};
        }
    }

    return MinResult{structural_min(ast, orgs), false,
                     "structural estimate: exact-set computation skipped for " +
                         std::to_string(n) + " distinct principals"};
}

}  // namespace

std::string_view to_string(PrincipalRole role) {
    switch (role) {
        case PrincipalRole::Member: return "member";
        case PrincipalRole::Admin: return "admin";
        case PrincipalRole::Peer: return "peer";
        case PrincipalRole::Client: return "client";
        case PrincipalRole::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(PolicyClass cls) {
    switch (cls) {
        case PolicyClass::Simple: return "Simple";
        case PolicyClass::Moderate: return "Moderate";
        case PolicyClass::Complex: return "Complex";
    }
    return "Moderate";
}

PolicyParseResult parse_policy(std::string_view text) {
    return PolicyParser(text).parse();
}

MinResult min_signers(const PolicyAst& ast) { return compute_min(ast, false); }

MinResult min_orgs(const PolicyAst& ast) { return compute_min(ast, true); }

int policy_depth(const PolicyAst& ast) {
    if (ast.kind == PolicyAst::Kind::Signed) return 0;
    int deepest = 0;
    for (const auto& child : ast.children)
        deepest = std::max(deepest, policy_depth(child));
    return deepest + 1;
}

std::vector<Principal> distinct_principals(const PolicyAst& ast) {
    std::vector<Principal> out;
    std::vector<std::string> keys;
    collect_principals(ast, out, keys);
    return out;
}

PolicyClass classify(const PolicyAst& ast, const ThresholdConfig& thresholds) {
    if (min_orgs(ast).value == 1) return PolicyClass::Simple;
    if (min_signers(ast).value >= thresholds.complex_min_signers ||
        policy_depth(ast) >= thresholds.complex_max_depth)
        return PolicyClass::Complex;
    return PolicyClass::Moderate;
}

}  // namespace fablint
