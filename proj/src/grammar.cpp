#include "redukto/grammar.hpp"

#include "redukto/symbols.hpp"

#include <algorithm>
#include <set>

namespace redukto {

bool GnfGrammar::is_nonterminal(const std::string& s) const {
    return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

bool GnfGrammar::is_terminal(const std::string& s) const {
    return std::find(terminals.begin(), terminals.end(), s) != terminals.end();
}

void GnfGrammar::validate() const {
    std::set<std::string> seen;
    for (const auto& n : nonterminals)
        if (!seen.insert(n).second) throw PreconditionError("duplicate nonterminal " + n);
    for (const auto& t : terminals) {
        if (!seen.insert(t).second) throw PreconditionError("terminal and nonterminal share the name " + t);
        if (!is_valid_token(t)) throw PreconditionError("malformed terminal token " + t);
    }
    if (!is_nonterminal(start)) throw PreconditionError("start symbol is not a nonterminal");
    if (rules.empty()) throw PreconditionError("grammar without rules");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto& r = rules[i];
        auto where = "rule " + std::to_string(i + 1);
        if (!is_nonterminal(r.lhs)) throw PreconditionError(where + ": left-hand side is not a nonterminal");
        if (!is_terminal(r.head)) throw PreconditionError(where + ": not in Greibach normal form");
        for (const auto& x : r.tail)
            if (!is_nonterminal(x)) throw PreconditionError(where + ": tail symbol " + x + " is not a nonterminal");
    }
}

}  // namespace redukto
