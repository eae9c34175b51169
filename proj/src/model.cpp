#include "redukto/model.hpp"

#include <algorithm>
#include <set>

namespace redukto {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::R: return "R";
        case Direction::RR: return "RR";
        case Direction::RL: return "RL";
    }
    return "?";
}

const char* to_string(RewriteForm f) {
    switch (f) {
        case RewriteForm::CL: return "CL";
        case RewriteForm::DL: return "DL";
        case RewriteForm::SL: return "SL";
    }
    return "?";
}

const char* to_string(AuxUse a) {
    switch (a) {
        case AuxUse::none: return "none";
        case AuxUse::W: return "W";
        case AuxUse::WW: return "WW";
    }
    return "?";
}

const char* to_string(RewriteClass c) {
    switch (c) {
        case RewriteClass::CL: return "CL";
        case RewriteClass::DL_not_CL: return "DL-not-CL";
        case RewriteClass::SL_not_DL: return "SL-not-DL";
        case RewriteClass::illegal: return "illegal";
    }
    return "?";
}

HMorphism HMorphism::identity_on_input(const Alphabet& alphabet) {
    std::vector<SymbolId> image(alphabet.size(), kUndefined);
    image[kLeftSentinel] = kLeftSentinel;
    image[kRightSentinel] = kRightSentinel;
    for (auto a : alphabet.input_symbols()) image[a] = a;
    return HMorphism(std::move(image));
}

void HMorphism::set(SymbolId from, SymbolId to) {
    if (from >= image_.size()) image_.resize(from + 1, kUndefined);
    image_[from] = to;
}

bool HMorphism::defined(SymbolId s) const { return s < image_.size() && image_[s] != kUndefined; }

SymbolId HMorphism::operator()(SymbolId s) const {
    if (!defined(s)) throw PreconditionError("symbol outside the domain of h");
    return image_[s];
}

WeightFunction WeightFunction::unit(const Alphabet& alphabet) {
    std::vector<std::uint64_t> w(alphabet.size(), 1);
    w[kLeftSentinel] = 0;
    w[kRightSentinel] = 0;
    return WeightFunction(std::move(w));
}

void WeightFunction::set(SymbolId s, std::uint64_t w) {
    if (s >= weights_.size()) weights_.resize(s + 1, 0);
    weights_[s] = w;
}

std::uint64_t WeightFunction::of(std::span<const SymbolId> word) const {
    std::uint64_t total = 0;
    for (auto s : word) total += (*this)(s);
    return total;
}

void TransitionTable::add(StateId state, const WindowContent& window, Instruction instr) {
    auto& list = entries[TransitionKey{state, window}];
    if (std::find(list.begin(), list.end(), instr) == list.end()) list.push_back(instr);
}

void TransitionTable::add_fallback(StateId state, Instruction instr) {
    auto& list = fallbacks[state];
    if (std::find(list.begin(), list.end(), instr) == list.end()) list.push_back(instr);
}

AutomatonSpec::AutomatonSpec(std::string name, Alphabet alphabet, std::vector<std::string> states, StateId initial,
                             std::size_t window, ClassFlags flags, TransitionTable table,
                             std::optional<HMorphism> morphism, std::optional<WeightFunction> weights)
    : name_(std::move(name)),
      alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      initial_(initial),
      window_(window),
      flags_(flags),
      table_(std::move(table)),
      morphism_(std::move(morphism)),
      weights_(std::move(weights)) {
    if (window_ < 1 || window_ > kMaxWindow) throw PreconditionError("window size out of range");
    if (states_.empty() || initial_ >= states_.size()) throw PreconditionError("initial state out of range");
    for (auto& [key, list] : table_.entries) {
        if (key.state >= states_.size()) throw PreconditionError("transition from unknown state");
        std::sort(list.begin(), list.end());
        if (list.size() > 1) deterministic_ = false;
    }
    for (auto& [state, list] : table_.fallbacks) {
        if (state >= states_.size()) throw PreconditionError("fallback for unknown state");
        std::sort(list.begin(), list.end());
        if (list.size() > 1) deterministic_ = false;
    }
    build_index();
}

AutomatonSpec::AutomatonSpec(const AutomatonSpec& other)
    : name_(other.name_),
      alphabet_(other.alphabet_),
      states_(other.states_),
      initial_(other.initial_),
      window_(other.window_),
      flags_(other.flags_),
      table_(other.table_),
      morphism_(other.morphism_),
      weights_(other.weights_),
      deterministic_(other.deterministic_) {
    build_index();
}

AutomatonSpec::AutomatonSpec(AutomatonSpec&& other)
    : name_(std::move(other.name_)),
      alphabet_(std::move(other.alphabet_)),
      states_(std::move(other.states_)),
      initial_(other.initial_),
      window_(other.window_),
      flags_(other.flags_),
      table_(std::move(other.table_)),
      morphism_(std::move(other.morphism_)),
      weights_(std::move(other.weights_)),
      deterministic_(other.deterministic_) {
    build_index();
    other.build_index();
}

AutomatonSpec& AutomatonSpec::operator=(const AutomatonSpec& other) {
    if (this != &other) {
        name_ = other.name_;
        alphabet_ = other.alphabet_;
        states_ = other.states_;
        initial_ = other.initial_;
        window_ = other.window_;
        flags_ = other.flags_;
        table_ = other.table_;
        morphism_ = other.morphism_;
        weights_ = other.weights_;
        deterministic_ = other.deterministic_;
        build_index();
    }
    return *this;
}

AutomatonSpec& AutomatonSpec::operator=(AutomatonSpec&& other) {
    if (this != &other) *this = static_cast<const AutomatonSpec&>(other);
    return *this;
}

// The index points into table_, so every copy builds its own.
void AutomatonSpec::build_index() {
    lookup_.clear();
    lookup_.reserve(table_.entries.size());
    for (const auto& [key, list] : table_.entries) lookup_.emplace(key, &list);
    fallback_lookup_.assign(states_.size(), nullptr);
    for (const auto& [state, list] : table_.fallbacks) fallback_lookup_[state] = &list;
}

std::optional<StateId> AutomatonSpec::find_state(std::string_view name) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name) return static_cast<StateId>(i);
    return std::nullopt;
}

const std::vector<Instruction>& AutomatonSpec::instructions(StateId state, const WindowContent& window) const {
    static const std::vector<Instruction> kNone;
    if (auto it = lookup_.find(TransitionKey{state, window}); it != lookup_.end()) return *it->second;
    if (state < fallback_lookup_.size() && fallback_lookup_[state]) return *fallback_lookup_[state];
    return kNone;
}

AutomatonSpec AutomatonSpec::with_flags(ClassFlags flags) const {
    return AutomatonSpec(name_, alphabet_, states_, initial_, window_, flags, table_, morphism_, weights_);
}
AutomatonSpec AutomatonSpec::with_name(std::string name) const {
    return AutomatonSpec(std::move(name), alphabet_, states_, initial_, window_, flags_, table_, morphism_, weights_);
}
AutomatonSpec AutomatonSpec::with_morphism(std::optional<HMorphism> h) const {
    return AutomatonSpec(name_, alphabet_, states_, initial_, window_, flags_, table_, std::move(h), weights_);
}
AutomatonSpec AutomatonSpec::with_weights(std::optional<WeightFunction> w) const {
    return AutomatonSpec(name_, alphabet_, states_, initial_, window_, flags_, table_, morphism_, std::move(w));
}
AutomatonSpec AutomatonSpec::with_table(TransitionTable table) const {
    return AutomatonSpec(name_, alphabet_, states_, initial_, window_, flags_, std::move(table), morphism_, weights_);
}

bool operator==(const AutomatonSpec& a, const AutomatonSpec& b) {
    return a.name_ == b.name_ && a.alphabet_ == b.alphabet_ && a.states_ == b.states_ && a.initial_ == b.initial_ &&
           a.window_ == b.window_ && a.flags_ == b.flags_ && a.table_.entries == b.table_.entries &&
           a.table_.fallbacks == b.table_.fallbacks && a.morphism_ == b.morphism_ && a.weights_ == b.weights_;
}

bool ValidationReport::has_violation(std::string_view code) const {
    return std::any_of(violations.begin(), violations.end(), [&](const auto& v) { return v.code == code; });
}

std::optional<std::size_t> min_deleted_blocks(const WindowContent& u, const WindowContent& v) {
    const std::size_t n = u.size(), m = v.size();
    constexpr std::size_t kInf = static_cast<std::size_t>(-1);
    // best[i][j][d]: fewest blocks for u[0..i) -> v[0..j), d = u[i-1] deleted
    std::vector<std::array<std::size_t, 2>> best((n + 1) * (m + 1), {kInf, kInf});
    auto at = [&](std::size_t i, std::size_t j) -> std::array<std::size_t, 2>& { return best[i * (m + 1) + j]; };
    at(0, 0)[0] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) {
            for (int d = 0; d < 2; ++d) {
                auto cur = at(i, j)[d];
                if (cur == kInf) continue;
                if (j < m && u[i] == v[j]) at(i + 1, j + 1)[0] = std::min(at(i + 1, j + 1)[0], cur);
                bool sentinel = u[i] == kLeftSentinel || u[i] == kRightSentinel;
                if (!sentinel) {
                    auto cost = cur + (d == 0 ? 1 : 0);
                    at(i + 1, j)[1] = std::min(at(i + 1, j)[1], cost);
                }
            }
        }
    }
    auto result = std::min(at(n, m)[0], at(n, m)[1]);
    if (result == kInf) return std::nullopt;
    return result;
}

namespace {

bool sentinels_match(const WindowContent& u, const WindowContent& v) {
    return u.starts_with_left_sentinel() == v.starts_with_left_sentinel() &&
           u.ends_with_right_sentinel() == v.ends_with_right_sentinel();
}

}  // namespace

RewriteClass classify_rewrite(const WindowContent& u, const WindowContent& v) {
    if (v.size() >= u.size() || !sentinels_match(u, v)) return RewriteClass::illegal;
    auto blocks = min_deleted_blocks(u, v);
    if (!blocks) return RewriteClass::SL_not_DL;
    return *blocks <= 2 ? RewriteClass::CL : RewriteClass::DL_not_CL;
}

namespace {

RewriteForm form_of(RewriteClass c) {
    switch (c) {
        case RewriteClass::CL: return RewriteForm::CL;
        case RewriteClass::DL_not_CL: return RewriteForm::DL;
        default: return RewriteForm::SL;
    }
}

// Larger is weaker: CL < DL < SL.
RewriteForm weaker(RewriteForm a, RewriteForm b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

template <typename F>
void for_each_instruction(const AutomatonSpec& spec, F&& f) {
    for (const auto& [key, list] : spec.table().entries)
        for (const auto& instr : list) f(key.state, &key.window, instr);
    for (const auto& [state, list] : spec.table().fallbacks)
        for (const auto& instr : list) f(state, nullptr, instr);
}

bool state_only_restarts(const AutomatonSpec& spec, StateId q) {
    bool any = false, only = true;
    for_each_instruction(spec, [&](StateId s, const WindowContent*, const Instruction& i) {
        if (s != q) return;
        any = true;
        if (i.kind != InstructionKind::restart) only = false;
    });
    return any && only;
}

std::string window_text(const AutomatonSpec& spec, const WindowContent* w) {
    if (!w) return "*";
    return spec.alphabet().render(w->symbols());
}

}  // namespace

ValidationReport validate_automaton(const AutomatonSpec& spec) {
    ValidationReport report;
    const auto& alphabet = spec.alphabet();
    const auto k = spec.window();
    const auto& flags = spec.flags();
    auto violate = [&](std::string code, std::string msg) { report.violations.push_back({std::move(code), std::move(msg)}); };

    bool has_mvl = false;
    RewriteForm form = RewriteForm::CL;

    for_each_instruction(spec, [&](StateId q, const WindowContent* u, const Instruction& instr) {
        const auto where = "(" + spec.state_name(q) + ", " + window_text(spec, u) + ")";
        if (u) {
            for (auto s : *u)
                if (s >= alphabet.size()) violate("malformed-window", "unknown symbol id in window " + where);
            if (!u->is_possible_content(k)) violate("malformed-window", "window " + where + " is not in PC^{<=k}");
        }
        if (instr.has_next_state() && instr.next >= spec.states().size())
            violate("unknown-state", "instruction at " + where + " targets an unknown state");
        switch (instr.kind) {
            case InstructionKind::move_right:
                if (u && u->size() == 1 && (*u)[0] == kRightSentinel)
                    violate("illegal-move", "MVR on window $ at " + where);
                break;
            case InstructionKind::move_left:
                has_mvl = true;
                if (u && u->starts_with_left_sentinel()) violate("illegal-move", "MVL on a window at the left sentinel " + where);
                break;
            case InstructionKind::rewrite: {
                if (!u) {
                    violate("fallback-rewrite", "SL cannot be a fallback instruction in state " + spec.state_name(q));
                    break;
                }
                const auto& v = instr.target;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    bool misplaced = (v[i] == kLeftSentinel && i != 0) || (v[i] == kRightSentinel && i + 1 != v.size());
                    if (misplaced || v[i] >= alphabet.size()) {
                        violate("malformed-target", "SL target at " + where + " is not a window content");
                        break;
                    }
                }
                if (!sentinels_match(*u, v)) {
                    violate("sentinel-mismatch", "SL target at " + where + " does not keep exactly the sentinels of its window");
                    break;
                }
                if (v.size() > u->size() || (v.size() == u->size() && !flags.shrinking)) {
                    violate("target-not-shorter", "SL target not shorter than its window at " + where);
                    break;
                }
                if (v.empty()) report.notes.push_back({"empty-target", "SL to the empty word at " + where});
                if (v.size() == u->size()) {
                    form = weaker(form, RewriteForm::SL);
                } else {
                    form = weaker(form, form_of(classify_rewrite(*u, v)));
                }
                break;
            }
            default: break;
        }
    });

    if (flags.direction != Direction::RL && has_mvl)
        violate("direction", std::string("MVL present under direction ") + to_string(flags.direction));
    if (flags.direction == Direction::R) {
        for_each_instruction(spec, [&](StateId q, const WindowContent* u, const Instruction& instr) {
            if (instr.kind == InstructionKind::rewrite && !state_only_restarts(spec, instr.next))
                violate("direction", "SL at (" + spec.state_name(q) + ", " + window_text(spec, u) +
                                         ") is not followed by an immediate restart");
        });
    }
    if (static_cast<int>(form) > static_cast<int>(flags.form))
        violate("rewrite-form", std::string("rewrites of form ") + to_string(form) + " under declared form " +
                                    to_string(flags.form));
    if (flags.aux != AuxUse::WW && alphabet.has_auxiliary())
        violate("aux", "auxiliary symbols present under a W-less or W class");
    if (flags.aux == AuxUse::none && flags.form == RewriteForm::SL)
        violate("aux", "class without W admits only DL or CL rewrites");
    if (flags.deterministic && !spec.is_deterministic())
        violate("nondeterministic", "several instructions share a left-hand side under the deterministic flag");
    if (flags.mr_degree < 1) violate("mr-degree", "mr degree must be positive");
    if (flags.shrinking && !spec.weights()) violate("weights", "shrinking class without a weight function");

    if (const auto& h = spec.morphism()) {
        for (auto s : alphabet.working_symbols()) {
            if (!h->defined(s)) {
                violate("morphism", "h undefined on " + alphabet.token(s));
                continue;
            }
            auto image = (*h)(s);
            if (image >= alphabet.size() || !alphabet.is_input(image))
                violate("morphism", "h maps " + alphabet.token(s) + " outside the input alphabet");
            else if (alphabet.is_input(s) && image != s)
                violate("morphism", "h is not the identity on input symbol " + alphabet.token(s));
        }
    }
    if (const auto& w = spec.weights()) {
        for (auto s : alphabet.working_symbols())
            if ((*w)(s) < 1) violate("weights", "weight of " + alphabet.token(s) + " is not positive");
    }
    return report;
}

TypeTags classify_automaton(const AutomatonSpec& spec) {
    TypeTags tags;
    tags.deterministic = spec.is_deterministic();
    tags.window = spec.window();
    tags.mr_degree = spec.flags().mr_degree;

    bool has_mvl = false, restart_after_rewrite = true;
    RewriteForm form = RewriteForm::CL;
    for_each_instruction(spec, [&](StateId, const WindowContent* u, const Instruction& instr) {
        if (instr.kind == InstructionKind::move_left) has_mvl = true;
        if (instr.kind == InstructionKind::rewrite && u) {
            if (!state_only_restarts(spec, instr.next)) restart_after_rewrite = false;
            auto c = instr.target.size() >= u->size() ? RewriteClass::SL_not_DL : classify_rewrite(*u, instr.target);
            form = weaker(form, form_of(c));
        }
    });
    tags.direction = has_mvl ? Direction::RL : (restart_after_rewrite ? Direction::R : Direction::RR);
    tags.form = form;
    if (spec.alphabet().has_auxiliary())
        tags.aux = AuxUse::WW;
    else
        tags.aux = form == RewriteForm::SL ? AuxUse::W : AuxUse::none;
    return tags;
}

std::string class_name(const TypeTags& tags) {
    std::string base = to_string(tags.direction);
    switch (tags.aux) {
        case AuxUse::WW:
            base += "WW";
            if (tags.form == RewriteForm::CL) base += "C";
            if (tags.form == RewriteForm::DL) base += "D";
            break;
        case AuxUse::W: base += "W"; break;
        case AuxUse::none:
            if (tags.form == RewriteForm::CL) base += "C";
            break;
    }
    std::string name = tags.deterministic ? "det-" : "";
    if (tags.mr_degree > 1)
        name += "mr" + base + "(" + std::to_string(tags.mr_degree) + ")";
    else
        name += base;
    return name;
}

Word project(const Alphabet& alphabet, std::span<const SymbolId> word) {
    Word out;
    for (auto s : word) {
        if (!alphabet.is_working(s)) throw PreconditionError("unknown symbol in projected word");
        if (alphabet.is_input(s)) out.push_back(s);
    }
    return out;
}

Word apply_morphism(const HMorphism& h, std::span<const SymbolId> word) {
    Word out;
    out.reserve(word.size());
    for (auto s : word) out.push_back(h(s));
    return out;
}

}  // namespace redukto
