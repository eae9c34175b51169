#pragma once

#include <string>
#include <vector>

namespace redukto {

/// Rule A -> a α of a Greibach-normal-form grammar.
struct GnfRule {
    std::string lhs;
    std::string head;
    std::vector<std::string> tail;

    friend bool operator==(const GnfRule&, const GnfRule&) = default;
};

/// Grammar in Greibach normal form with rules numbered 1..m in list order.
struct GnfGrammar {
    std::vector<std::string> nonterminals;
    std::vector<std::string> terminals;
    std::string start;
    std::vector<GnfRule> rules;

    /// Throws PreconditionError on unknown symbols or a non-GNF rule.
    void validate() const;

    [[nodiscard]] bool is_nonterminal(const std::string& s) const;
    [[nodiscard]] bool is_terminal(const std::string& s) const;
    /// Rule by its 1-based number.
    [[nodiscard]] const GnfRule& rule(std::size_t number) const { return rules.at(number - 1); }

    friend bool operator==(const GnfGrammar&, const GnfGrammar&) = default;
};

}  // namespace redukto
