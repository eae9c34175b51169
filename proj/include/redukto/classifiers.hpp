#pragma once

#include "redukto/catalog.hpp"
#include "redukto/engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace redukto {

enum class Verdict { holds, violated, resource_exceeded };
const char* to_string(Verdict v);

struct Counterexample {
    Word word;
    Trace trace;  // replayable, possibly partial
    std::string explanation;
};

/// Result of a bounded check. "holds" always means "holds up to `bound`".
struct CheckReport {
    std::string property;
    std::size_t bound = 0;
    Verdict verdict = Verdict::holds;
    std::optional<Counterexample> counterexample;
    std::vector<std::string> details;
};

/// Lists every (state, window) with two or more instructions. Conflicts
/// are reported in `details`; there is no word-level counterexample.
CheckReport check_determinism(const AutomatonSpec& spec);

/// Every rewrite must belong to `required` (the declared form when unset).
CheckReport check_forms(const AutomatonSpec& spec, std::optional<RewriteForm> required = std::nullopt);

/// Right distances at rewrite configurations never increase along any
/// computation from any word over Γ of length <= n.
CheckReport check_monotone(const AutomatonSpec& spec, std::size_t n, const EngineOptions& options = {});

/// Every cycle performs 1..mr SL-steps and no tail performs one, over all
/// words of length <= n. `mr` overrides the declared degree.
CheckReport check_cycle_soundness(const AutomatonSpec& spec, std::size_t n, const EngineOptions& options = {},
                                  std::optional<unsigned> mr = std::nullopt);

enum class PreservationMode { complete_correctness, complete_error, cycle_correctness, cycle_error };
const char* to_string(PreservationMode m);
PreservationMode parse_preservation_mode(std::string_view text);

/// Membership along cycle-rewrites u ⇒ v with |u| <= n. Status comes from
/// the basic-language decider, or from `reference` when given (to test an
/// automaton against an intended language). Complete modes and
/// cycle-correctness need a deterministic automaton.
CheckReport check_preservation(const AutomatonSpec& spec, std::size_t n, PreservationMode mode,
                               const EngineOptions& options = {},
                               const std::optional<WordPredicate>& reference = std::nullopt);

/// Weights are >= 1 on Γ and every cycle-rewrite u ⇒ v with |u| <= n has
/// ω(v) < ω(u).
CheckReport check_shrinking(const AutomatonSpec& spec, const WeightFunction& weights, std::size_t n,
                            const EngineOptions& options = {});

/// For every n <= max_n, applies every length-reducing window-k rewrite at
/// every position of ¢ a^n c^(k-1) b^n $ and checks that the result keeps
/// the prefix a^n or the suffix b^n and lies outside {a^m c^(k-1) b^m}.
/// Independent of any automaton.
CheckReport sweep_window_rewrites(std::size_t k, std::size_t max_n);

}  // namespace redukto
