#pragma once

#include "redukto/catalog.hpp"
#include "redukto/classifiers.hpp"
#include "redukto/engine.hpp"
#include "redukto/grammar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace redukto {

/// G′ and the derivation alphabet B of a GNF grammar G: rule i, A -> a α,
/// becomes A -> (i,a) α, and h maps (i,a) to a.
struct DerivationEncoding {
    GnfGrammar source;
    GnfGrammar encoded;
    std::vector<std::string> symbols;  // B; symbols[i-1] belongs to rule i
    std::vector<std::string> image;    // h on B, aligned with `symbols`
};

/// Throws PreconditionError on a malformed grammar.
DerivationEncoding derivation_encode(const GnfGrammar& g);

/// Leftmost-derivation replay with a prediction stack. For G′ the terminal
/// fixes the rule, so the replay is deterministic; for other grammars the
/// first rule with matching lhs and head is taken.
bool derivation_check(const GnfGrammar& encoded, std::span<const std::string> omega);

/// Oracle for L(g) over `alphabet` (tokens are g's terminals). Membership
/// is a breadth-first search over prediction stacks, so it also serves
/// ambiguous grammars; viable_prefix holds when some stack survives.
LanguageOracle grammar_oracle(const GnfGrammar& g, const Alphabet& alphabet);

struct SynthesisOptions {
    std::size_t window = 3;
    std::size_t max_window = 0;  // 0: only `window` is tried
    std::size_t train_length = 10;
    std::size_t validate_length = 12;
    EngineOptions engine;
};

struct SynthesisRule {
    WindowContent from;
    WindowContent to;
};

struct SynthesisReport {
    bool success = false;
    std::size_t window = 0;
    std::size_t train_length = 0;
    std::size_t validate_length = 0;
    std::vector<SynthesisRule> rules;
    std::vector<std::string> attempts;         // one line per window size tried
    std::vector<std::string> counterexamples;  // residual failures of the last attempt
};

class SynthesisFailed : public std::runtime_error {
public:
    explicit SynthesisFailed(SynthesisReport report);
    const SynthesisReport& report() const { return report_; }

private:
    SynthesisReport report_;
};

struct SynthesisResult {
    AutomatonSpec automaton;
    SynthesisReport report;
};

/// Oracle-guided deterministic monotone CL reduction system for L(G′) over
/// B, validated up to validate_length. Throws SynthesisFailed.
SynthesisResult synthesize_reduction_system(const DerivationEncoding& encoding, const SynthesisOptions& options);

/// Terminals of G as Σ followed by B as auxiliary symbols; the alphabet of
/// build_hrrwwc and of its synthesis report.
Alphabet hrrwwc_alphabet(const GnfGrammar& g);

/// The h-RRWWC automaton for L(G): B as auxiliary symbols, the terminals
/// of G as input symbols, h as in the encoding. Throws PreconditionError
/// when G generates λ and SynthesisFailed when no window up to the cap works.
SynthesisResult build_hrrwwc(const GnfGrammar& g, const SynthesisOptions& options, std::string name = "hrrwwc");

/// Degree of lexical ambiguity |h^{-1}(a)|.
std::size_t dga(const AutomatonSpec& spec, SymbolId a);

struct ShrinkingResult {
    AutomatonSpec automaton;
    WeightFunction weights;
};

/// Two-phase shrinking automaton: phase 1 replaces input symbols right to
/// left by their h-preimages (a itself by â), one per cycle; phase 2 runs
/// the source with â for a. Needs h and a window of at least 2.
ShrinkingResult to_shrinking(const AutomatonSpec& spec);

/// Renames every input symbol a of `word` to â in the shrinking automaton.
Word hat_word(const AutomatonSpec& source, const AutomatonSpec& shrunk, std::span<const SymbolId> word);

/// Validates a shrinking transform: L(M_s) = L_hP(source) on Σ^{<=lang_len},
/// check_shrinking at shrink_len, and equality of the length-reducing
/// cycle-rewrites of M_s on hatted words with the hatted source rewrites
/// on Γ^{<=corr_len}.
std::vector<CheckReport> validate_shrinking(const AutomatonSpec& source, const ShrinkingResult& result,
                                            std::size_t lang_len, std::size_t shrink_len, std::size_t corr_len,
                                            const EngineOptions& options = {});

}  // namespace redukto
