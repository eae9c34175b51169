#pragma once

#include "redukto/symbols.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace redukto {

using StateId = std::uint16_t;

// Enumerator order is the fixed exploration order of the engine.
enum class InstructionKind : std::uint8_t { move_right, move_left, rewrite, restart, accept, reject };

struct Instruction {
    InstructionKind kind = InstructionKind::reject;
    StateId next = 0;        // MVR, MVL and SL only
    WindowContent target;    // SL only

    static Instruction move_right(StateId next) { return {InstructionKind::move_right, next, {}}; }
    static Instruction move_left(StateId next) { return {InstructionKind::move_left, next, {}}; }
    static Instruction rewrite(StateId next, WindowContent target) {
        return {InstructionKind::rewrite, next, target};
    }
    static Instruction restart() { return {InstructionKind::restart, 0, {}}; }
    static Instruction accept() { return {InstructionKind::accept, 0, {}}; }
    static Instruction reject() { return {InstructionKind::reject, 0, {}}; }

    [[nodiscard]] bool has_next_state() const {
        return kind == InstructionKind::move_right || kind == InstructionKind::move_left ||
               kind == InstructionKind::rewrite;
    }

    friend bool operator==(const Instruction&, const Instruction&) = default;
    friend auto operator<=>(const Instruction& a, const Instruction& b) {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.target <=> b.target; c != 0) return c;
        return a.next <=> b.next;
    }
};

enum class Direction { R, RR, RL };
enum class RewriteForm { CL, DL, SL };
enum class AuxUse { none, W, WW };

const char* to_string(Direction d);
const char* to_string(RewriteForm f);
const char* to_string(AuxUse a);

/// Declared class of an automaton. Flags are verified against the table by
/// validate_automaton rather than inferred.
struct ClassFlags {
    Direction direction = Direction::RL;
    RewriteForm form = RewriteForm::SL;
    AuxUse aux = AuxUse::WW;
    bool deterministic = false;
    unsigned mr_degree = 1;
    // Shrinking automata may use rewrites that keep the length; a weight
    // function then certifies progress.
    bool shrinking = false;

    friend bool operator==(const ClassFlags&, const ClassFlags&) = default;
};

/// Letter-to-letter morphism h: Γ -> Σ, identity on Σ.
class HMorphism {
public:
    HMorphism() = default;
    explicit HMorphism(std::vector<SymbolId> image) : image_(std::move(image)) {}

    /// Identity on Σ, unmapped for auxiliary symbols until set().
    static HMorphism identity_on_input(const Alphabet& alphabet);

    void set(SymbolId from, SymbolId to);
    [[nodiscard]] bool defined(SymbolId s) const;
    [[nodiscard]] SymbolId operator()(SymbolId s) const;
    [[nodiscard]] const std::vector<SymbolId>& image() const { return image_; }

    friend bool operator==(const HMorphism&, const HMorphism&) = default;

    static constexpr SymbolId kUndefined = 0xFFFF;

private:
    std::vector<SymbolId> image_;
};

/// Positive symbol weights, extended additively to words.
class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(std::vector<std::uint64_t> weights) : weights_(std::move(weights)) {}

    /// Weight 1 for every working symbol; the plain length function.
    static WeightFunction unit(const Alphabet& alphabet);

    void set(SymbolId s, std::uint64_t w);
    [[nodiscard]] std::uint64_t operator()(SymbolId s) const { return s < weights_.size() ? weights_[s] : 0; }
    [[nodiscard]] std::uint64_t of(std::span<const SymbolId> word) const;
    [[nodiscard]] const std::vector<std::uint64_t>& weights() const { return weights_; }

    friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

private:
    std::vector<std::uint64_t> weights_;
};

struct TransitionKey {
    StateId state = 0;
    WindowContent window;

    friend bool operator==(const TransitionKey&, const TransitionKey&) = default;
    friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

struct TransitionKeyHash {
    std::size_t operator()(const TransitionKey& k) const noexcept {
        return WindowHash{}(k.window) * 31u + k.state;
    }
};

/// δ as written: explicit entries keyed by (state, window) plus an optional
/// per-state fallback used for every window without an explicit entry
/// ("for all x" in a table).
struct TransitionTable {
    std::map<TransitionKey, std::vector<Instruction>> entries;
    std::map<StateId, std::vector<Instruction>> fallbacks;

    void add(StateId state, const WindowContent& window, Instruction instr);
    void add_fallback(StateId state, Instruction instr);
};

/// An (h-)RLWW automaton M = (Q, Σ, Γ, ¢, $, q0, k, δ) with its declared
/// class and optional morphism and weights. Immutable once built.
class AutomatonSpec {
public:
    AutomatonSpec(std::string name, Alphabet alphabet, std::vector<std::string> states, StateId initial,
                  std::size_t window, ClassFlags flags, TransitionTable table,
                  std::optional<HMorphism> morphism = std::nullopt,
                  std::optional<WeightFunction> weights = std::nullopt);
    AutomatonSpec(const AutomatonSpec& other);
    AutomatonSpec(AutomatonSpec&& other);
    AutomatonSpec& operator=(const AutomatonSpec& other);
    AutomatonSpec& operator=(AutomatonSpec&& other);
    ~AutomatonSpec() = default;

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] const std::string& state_name(StateId q) const { return states_.at(q); }
    [[nodiscard]] std::optional<StateId> find_state(std::string_view name) const;
    [[nodiscard]] StateId initial() const { return initial_; }
    [[nodiscard]] std::size_t window() const { return window_; }
    [[nodiscard]] const ClassFlags& flags() const { return flags_; }
    [[nodiscard]] const TransitionTable& table() const { return table_; }
    [[nodiscard]] const std::optional<HMorphism>& morphism() const { return morphism_; }
    [[nodiscard]] const std::optional<WeightFunction>& weights() const { return weights_; }

    /// Instructions applicable in `state` on `window`: the explicit entry if
    /// present, otherwise the state's fallback, otherwise none. Sorted in
    /// engine exploration order.
    [[nodiscard]] const std::vector<Instruction>& instructions(StateId state, const WindowContent& window) const;

    /// At most one instruction for every (state, window).
    [[nodiscard]] bool is_deterministic() const { return deterministic_; }

    [[nodiscard]] AutomatonSpec with_flags(ClassFlags flags) const;
    [[nodiscard]] AutomatonSpec with_name(std::string name) const;
    [[nodiscard]] AutomatonSpec with_morphism(std::optional<HMorphism> h) const;
    [[nodiscard]] AutomatonSpec with_weights(std::optional<WeightFunction> w) const;
    [[nodiscard]] AutomatonSpec with_table(TransitionTable table) const;

    friend bool operator==(const AutomatonSpec& a, const AutomatonSpec& b);

private:
    void build_index();

    std::string name_;
    Alphabet alphabet_;
    std::vector<std::string> states_;
    StateId initial_;
    std::size_t window_;
    ClassFlags flags_;
    TransitionTable table_;
    std::optional<HMorphism> morphism_;
    std::optional<WeightFunction> weights_;

    std::unordered_map<TransitionKey, const std::vector<Instruction>*, TransitionKeyHash> lookup_;
    std::vector<const std::vector<Instruction>*> fallback_lookup_;
    bool deterministic_ = true;
};

struct ValidationIssue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> violations;
    // Legal but noteworthy constructs, e.g. an empty rewrite target.
    std::vector<ValidationIssue> notes;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    [[nodiscard]] bool has_violation(std::string_view code) const;
};

ValidationReport validate_automaton(const AutomatonSpec& spec);

enum class RewriteClass { CL, DL_not_CL, SL_not_DL, illegal };
const char* to_string(RewriteClass c);

/// Minimum number of contiguous blocks that must be deleted from `u` to
/// obtain `v`, or nullopt when `v` is not a subsequence of `u` that keeps
/// every sentinel.
std::optional<std::size_t> min_deleted_blocks(const WindowContent& u, const WindowContent& v);

RewriteClass classify_rewrite(const WindowContent& u, const WindowContent& v);

struct TypeTags {
    bool deterministic = false;
    Direction direction = Direction::RL;
    RewriteForm form = RewriteForm::SL;
    AuxUse aux = AuxUse::WW;
    std::size_t window = 1;
    unsigned mr_degree = 1;

    friend bool operator==(const TypeTags&, const TypeTags&) = default;
};

/// Strongest tags consistent with the table. The mr degree is the declared
/// one; check_cycle_soundness verifies it on computations.
TypeTags classify_automaton(const AutomatonSpec& spec);

/// Conventional class name, e.g. "det-RWW", "det-RC", "det-mrRRC(2)".
std::string class_name(const TypeTags& tags);

/// Pr^Σ: erase auxiliary symbols.
Word project(const Alphabet& alphabet, std::span<const SymbolId> word);

/// Length-preserving image under h.
Word apply_morphism(const HMorphism& h, std::span<const SymbolId> word);

}  // namespace redukto
