#pragma once

#include "redukto/grammar.hpp"
#include "redukto/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace redukto {

using WordPredicate = std::function<bool(std::span<const SymbolId>)>;

/// Closed-form description of a language used as a test oracle.
struct LanguageOracle {
    WordPredicate contains;
    // True when some extension of the prefix (the prefix included) is in the
    // language. Unset means "unknown", which disables prefix pruning.
    WordPredicate viable_prefix;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    std::optional<AutomatonSpec> automaton;
    std::optional<GnfGrammar> grammar;
    // Alphabet the oracle reads: Σ of the automaton, or the grammar's terminals.
    Alphabet alphabet;
    LanguageOracle oracle;
    std::string declared_tags;  // e.g. "det-mon-RC k=2"
    std::size_t test_bound = 12;
};

/// Looks up an entry. Parametrized families take their parameter either
/// inline ("l_3", "lm_2") or through `param` ("l_k", 3).
CatalogEntry catalog_get(std::string_view name, std::optional<unsigned> param = std::nullopt);

/// Every entry with default parameters (l_k for k = 2..4, lm_j for j = 1..3),
/// in a fixed order.
std::vector<CatalogEntry> catalog_list();

/// Names of the automaton entries of catalog_list().
std::vector<std::string> catalog_automaton_names();

// Individual builders.
AutomatonSpec make_m_e();
AutomatonSpec make_m_e_h();
AutomatonSpec make_dyck1();
AutomatonSpec make_l_k(unsigned k);
AutomatonSpec make_lm_j(unsigned j);
AutomatonSpec make_reg_window1();
GnfGrammar make_anbn_gnf();
GnfGrammar make_dyck_gnf();

}  // namespace redukto
