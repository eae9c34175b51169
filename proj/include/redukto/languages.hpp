#pragma once

#include "redukto/catalog.hpp"
#include "redukto/engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace redukto {

enum class LanguageKind { input, basic, proper, hproper };
const char* to_string(LanguageKind k);
LanguageKind parse_language_kind(std::string_view text);

struct LanguageQuery {
    LanguageKind kind = LanguageKind::input;
    std::size_t max_len = 0;
    EngineOptions options;
};

struct HProperDecision {
    Membership verdict = Membership::non_member;
    Word witness;     // extended version w with h(w) = v
    Trace trace;      // accepting computation on the witness
};

/// Searches h^{-1}(v) position by position, cutting every preimage prefix
/// whose basic-language fate is already settled.
class HProperDecider {
public:
    explicit HProperDecider(const AutomatonSpec& spec, EngineOptions options = {}, bool memoize = true);

    HProperDecision decide(std::span<const SymbolId> v);
    Membership status(std::span<const SymbolId> v);

    /// Working symbols d with h(d) = a, in alphabet order.
    [[nodiscard]] const std::vector<SymbolId>& preimages(SymbolId a) const { return preimages_.at(a); }
    BasicDecider& basic() { return basic_; }

private:
    bool search(std::span<const SymbolId> v, Word& prefix, bool& exceeded);

    const AutomatonSpec& spec_;
    BasicDecider basic_;
    std::vector<std::vector<SymbolId>> preimages_;
};

HProperDecision decide_hproper_membership(const AutomatonSpec& spec, std::span<const SymbolId> v,
                                          const EngineOptions& options = {});

enum class WalkStep { descend, skip, stop };

/// Depth-first walk over all words of length <= max_len over `letters`
/// (lexicographic pre-order). The visitor decides whether to enter the
/// extensions of each word.
void walk_words(std::span<const SymbolId> letters, std::size_t max_len,
                const std::function<WalkStep(const Word&)>& visit);

/// All words over the kind's alphabet, length-lex sorted. For proper
/// languages the bound applies to the basic words, so the listing is
/// incomplete by nature. Throws ResourceExceeded.
std::vector<Word> enumerate_language(const AutomatonSpec& spec, const LanguageQuery& query);

/// Membership status of every word over `letters` up to max_len for a
/// deterministic automaton, computed shortest-first from one cycle per word.
/// `letters` must contain every working symbol. Index with word_rank().
struct DenseTable {
    std::vector<SymbolId> letters;
    std::size_t max_len = 0;
    std::vector<std::uint8_t> status;  // 1 member, 0 non-member, 2 resource exceeded
    std::vector<std::size_t> offsets;  // first rank of each length

    [[nodiscard]] std::size_t rank(std::span<const SymbolId> w) const;
    [[nodiscard]] Word unrank(std::size_t r) const;
};
DenseTable tabulate_deterministic(const AutomatonSpec& spec, std::size_t max_len, const EngineOptions& options = {});

struct Comparison {
    bool equal = true;
    std::optional<std::vector<std::string>> counterexample;  // tokens of the first differing word
    bool in_first = false;                                    // counterexample belongs to the first language
    std::size_t words_checked = 0;
};

/// Compares two bounded languages as sets of token sequences.
Comparison compare_languages(const AutomatonSpec& a, const LanguageQuery& qa, const AutomatonSpec& b,
                             const LanguageQuery& qb);

/// Compares the input or basic language of `spec` (over Σ or Γ) with an
/// oracle on all words up to max_len. Uses a dense table for small
/// deterministic cases and oracle/automaton prefix pruning otherwise.
Comparison compare_with_oracle(const AutomatonSpec& spec, LanguageKind kind, std::size_t max_len,
                               const LanguageOracle& oracle, const EngineOptions& options = {});

/// Oracle words over `letters` up to max_len, length-lex sorted.
std::vector<Word> enumerate_oracle(const LanguageOracle& oracle, std::span<const SymbolId> letters,
                                   std::size_t max_len);

/// Compares two sorted word lists; words are rendered through the alphabets.
Comparison compare_word_lists(const Alphabet& alpha_a, const std::vector<Word>& a, const Alphabet& alpha_b,
                              const std::vector<Word>& b);

}  // namespace redukto
