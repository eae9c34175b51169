#pragma once

#include "redukto/model.hpp"

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace redukto {

struct Limits {
    std::size_t max_steps_per_cycle = 10'000;
    std::size_t max_configs = 1'000'000;
    std::size_t max_total_cycles = 100'000;
};

/// strict: every cycle performs between 1 and mr-degree SL-steps and no tail
/// performs one. permissive: raw Definition-1 machines, no per-cycle count.
enum class CycleDiscipline { strict, permissive };

struct EngineOptions {
    Limits limits;
    CycleDiscipline discipline = CycleDiscipline::strict;
};

// Marks the unread remainder of a tape whose suffix is not yet known.
inline constexpr SymbolId kUnknownCell = 0xFFFE;

struct Configuration {
    Word tape;             // ¢ w $, sentinels included
    StateId state = 0;
    std::size_t pos = 0;   // index of the leftmost window cell
    unsigned rewrites = 0; // SL-steps since the last restart

    [[nodiscard]] WindowContent window(std::size_t k) const;
    /// Tape contents between the sentinels.
    [[nodiscard]] Word contents() const { return Word(tape.begin() + 1, tape.end() - 1); }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration restarting_configuration(const AutomatonSpec& spec, std::span<const SymbolId> word);

/// D_r: number of cells from the window start through $.
std::size_t right_distance(const Configuration& config);

struct Successor {
    Instruction instruction;
    Configuration config;  // unchanged for Accept and Reject
};

/// One-step successors in exploration order.
std::vector<Successor> successors(const AutomatonSpec& spec, const Configuration& config);

struct TraceStep {
    Configuration config;
    Instruction instruction;
};

enum class Outcome { accept, reject, diverges, limit_exceeded, invalid_cycle };
const char* to_string(Outcome o);

struct Trace {
    std::vector<TraceStep> steps;
    Outcome outcome = Outcome::reject;
    bool stuck = false;     // halted on a missing transition
    std::string note;

    [[nodiscard]] std::size_t cycles() const;
    /// Tape contents at each restarting configuration, starting with the input.
    [[nodiscard]] std::vector<Word> restart_tapes() const;
};

/// Budget shared by all explorations that belong to one decision.
struct Budget {
    std::size_t configs_left;
    bool exhausted = false;

    explicit Budget(const Limits& limits) : configs_left(limits.max_configs) {}
    bool spend() {
        if (configs_left == 0) {
            exhausted = true;
            return false;
        }
        --configs_left;
        return true;
    }
};

enum class CycleEnd { restart, accept, reject, stuck, invalid, diverges, limit, open };
const char* to_string(CycleEnd e);

/// One maximal branch starting in a restarting configuration: either a cycle
/// ending in Restart or a tail.
struct CycleResult {
    CycleEnd end = CycleEnd::reject;
    Word tape;                                  // contents when the branch ends
    std::vector<std::size_t> rewrite_distances; // D_r of each rewrite configuration
    std::vector<Word> rewritten_tapes;          // contents right after each SL-step
    std::span<const TraceStep> path;            // filled only when paths are recorded
    std::string detail;
};

struct ExploreRequest {
    bool record_paths = false;
    // The tape continues past `word` with unknown contents; branches whose
    // window reaches it end with CycleEnd::open.
    bool open_end = false;
};

/// Enumerates the distinct branch ends of the phase that starts in q0 ¢ word $.
/// The visitor returns false to stop.
void explore_cycle(const AutomatonSpec& spec, std::span<const SymbolId> word, const EngineOptions& options,
                   Budget& budget, const ExploreRequest& request,
                   const std::function<bool(const CycleResult&)>& visit);

/// One phase of a deterministic automaton from q0 ¢ word $, recording
/// nothing. On restart `word` holds the new tape contents.
CycleEnd deterministic_phase(const AutomatonSpec& spec, Word& word, const EngineOptions& options = {});

/// Runs a deterministic automaton. Throws PreconditionError otherwise.
Trace run_deterministic(const AutomatonSpec& spec, std::span<const SymbolId> word,
                        const EngineOptions& options = {});

enum class Membership { member, non_member, resource_exceeded };
const char* to_string(Membership m);

struct Decision {
    Membership verdict = Membership::non_member;
    Trace witness;  // accepting computation for members
};

/// Nondeterministic membership search over restarting tapes. The memo table
/// persists across calls, so one object may decide many words of the same
/// automaton.
class BasicDecider {
public:
    BasicDecider(const AutomatonSpec& spec, EngineOptions options = {}, bool memoize = true);

    Membership status(std::span<const SymbolId> word);
    Decision decide(std::span<const SymbolId> word);
    /// All computations from ¢ prefix ... end without reading past `prefix`;
    /// every extension then behaves like `prefix` itself.
    bool prefix_determined(std::span<const SymbolId> prefix);

    [[nodiscard]] const AutomatonSpec& spec() const { return spec_; }
    [[nodiscard]] const EngineOptions& options() const { return options_; }

private:
    Membership search(const Word& word, Budget& budget);
    bool open_search(const Word& prefix, Budget& budget);
    Trace witness_for(const Word& word);

    const AutomatonSpec& spec_;
    EngineOptions options_;
    bool memoize_;
    std::unordered_map<Word, Membership, WordHash> memo_;
    std::unordered_map<Word, bool, WordHash> determined_memo_;
    std::vector<Word> stack_;
    std::size_t loop_hits_ = 0;
};

Decision decide_basic_membership(const AutomatonSpec& spec, std::span<const SymbolId> word,
                                 const EngineOptions& options = {});

/// Throws PreconditionError when the word is not over Σ.
Decision decide_input_membership(const AutomatonSpec& spec, std::span<const SymbolId> word,
                                 const EngineOptions& options = {});

struct CycleRewrite {
    Word from;
    Word to;
    std::vector<TraceStep> witness;
};

/// All v with word ⇒_M^c v, one witness each, sorted length-lex by v.
std::vector<CycleRewrite> cycle_rewrites(const AutomatonSpec& spec, std::span<const SymbolId> word,
                                         const EngineOptions& options = {});

/// Replays a trace step by step. Returns an empty string when every step is
/// a legal successor of the previous one, else a description of the fault.
std::string replay_trace(const AutomatonSpec& spec, const Trace& trace);

}  // namespace redukto
