#include "redukto/engine.hpp"

#include <algorithm>
#include <unordered_set>

namespace redukto {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::accept: return "Accept";
        case Outcome::reject: return "Reject";
        case Outcome::diverges: return "Diverges";
        case Outcome::limit_exceeded: return "LimitExceeded";
        case Outcome::invalid_cycle: return "InvalidCycle";
    }
    return "?";
}

const char* to_string(CycleEnd e) {
    switch (e) {
        case CycleEnd::restart: return "restart";
        case CycleEnd::accept: return "accept";
        case CycleEnd::reject: return "reject";
        case CycleEnd::stuck: return "stuck";
        case CycleEnd::invalid: return "invalid";
        case CycleEnd::diverges: return "diverges";
        case CycleEnd::limit: return "limit";
        case CycleEnd::open: return "open";
    }
    return "?";
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::member: return "member";
        case Membership::non_member: return "non-member";
        case Membership::resource_exceeded: return "resource-exceeded";
    }
    return "?";
}

WindowContent Configuration::window(std::size_t k) const {
    auto end = std::min(pos + k, tape.size());
    return WindowContent(std::span<const SymbolId>(tape.data() + pos, end - pos));
}

Configuration restarting_configuration(const AutomatonSpec& spec, std::span<const SymbolId> word) {
    Configuration c;
    c.tape.reserve(word.size() + 2);
    c.tape.push_back(kLeftSentinel);
    for (auto s : word) {
        if (!spec.alphabet().is_working(s)) throw PreconditionError("word contains a symbol outside the working alphabet");
        c.tape.push_back(s);
    }
    c.tape.push_back(kRightSentinel);
    c.state = spec.initial();
    return c;
}

std::size_t right_distance(const Configuration& config) { return config.tape.size() - config.pos; }

std::size_t Trace::cycles() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const TraceStep& s) {
        return s.instruction.kind == InstructionKind::restart;
    }));
}

std::vector<Word> Trace::restart_tapes() const {
    std::vector<Word> out;
    if (steps.empty()) return out;
    out.push_back(steps.front().config.contents());
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        if (steps[i].instruction.kind == InstructionKind::restart) out.push_back(steps[i + 1].config.contents());
    return out;
}

namespace {

// Applies a legal instruction in place. Returns false when the side
// conditions of the step forbid it on the current window.
bool apply(const AutomatonSpec& spec, Configuration& c, const Instruction& instr, std::size_t window_size) {
    switch (instr.kind) {
        case InstructionKind::move_right:
            if (c.pos + 1 >= c.tape.size()) return false;
            ++c.pos;
            c.state = instr.next;
            return true;
        case InstructionKind::move_left:
            if (c.pos == 0) return false;
            --c.pos;
            c.state = instr.next;
            return true;
        case InstructionKind::rewrite: {
            const auto& v = instr.target;
            auto first = c.tape.begin() + static_cast<std::ptrdiff_t>(c.pos);
            c.tape.erase(first + static_cast<std::ptrdiff_t>(v.size()), first + static_cast<std::ptrdiff_t>(window_size));
            std::copy(v.begin(), v.end(), c.tape.begin() + static_cast<std::ptrdiff_t>(c.pos));
            auto shift = window_size - v.size();
            c.pos = c.pos > shift ? c.pos - shift : 0;
            c.state = instr.next;
            ++c.rewrites;
            return true;
        }
        case InstructionKind::restart:
            c.state = spec.initial();
            c.pos = 0;
            c.rewrites = 0;
            return true;
        case InstructionKind::accept:
        case InstructionKind::reject: return true;
    }
    return false;
}

bool touches_unknown(const WindowContent& w) {
    return std::find(w.begin(), w.end(), kUnknownCell) != w.end();
}

// A configuration together with the rewrite history of the branch that
// reached it; branches with different histories report different results.
struct VisitKey {
    Configuration config;
    std::vector<std::size_t> distances;
    std::vector<Word> rewritten;

    friend bool operator==(const VisitKey&, const VisitKey&) = default;
};

struct VisitKeyHash {
    std::size_t operator()(const VisitKey& k) const noexcept {
        const auto& c = k.config;
        std::size_t h = WordHash{}(c.tape) ^ (c.pos * 0x9E3779B97F4A7C15ull) ^ (std::size_t(c.state) << 20) ^
                        (std::size_t(c.rewrites) << 40);
        for (auto d : k.distances) h = h * 31u + d;
        for (const auto& w : k.rewritten) h = h * 131u + WordHash{}(w);
        return h;
    }
};

class Explorer {
public:
    Explorer(const AutomatonSpec& spec, std::span<const SymbolId> word, const EngineOptions& options, Budget& budget,
             const ExploreRequest& request, const std::function<bool(const CycleResult&)>& visit)
        : spec_(spec), options_(options), budget_(budget), request_(request), visit_(visit), k_(spec.window()) {
        strict_ = options.discipline == CycleDiscipline::strict;
        mr_ = std::max(1u, spec.flags().mr_degree);
        deterministic_ = spec.is_deterministic();
        start_.tape.reserve(word.size() + 2);
        start_.tape.push_back(kLeftSentinel);
        start_.tape.insert(start_.tape.end(), word.begin(), word.end());
        start_.tape.push_back(request.open_end ? kUnknownCell : kRightSentinel);
        start_.state = spec.initial();
    }

    void run() {
        Configuration c = start_;
        walk(c, 0, 0);
    }

private:
    void emit(CycleEnd end, const Configuration& c, std::string detail = {}) {
        if (stopped_) return;
        CycleResult r;
        r.end = end;
        r.tape = c.contents();
        r.rewrite_distances = distances_;
        r.rewritten_tapes = rewritten_;
        r.path = path_;
        r.detail = std::move(detail);
        if (!visit_(r)) stopped_ = true;
    }

    // Follows single-successor chains iteratively and branches recursively.
    void walk(Configuration& c, std::size_t depth, std::size_t segment) {
        const auto path_mark = path_.size();
        const auto dist_mark = distances_.size();
        auto restore = [&] {
            path_.resize(path_mark);
            distances_.resize(dist_mark);
            rewritten_.resize(dist_mark);
        };
        while (!stopped_) {
            if (!budget_.spend()) {
                emit(CycleEnd::limit, c, "configuration budget exhausted");
                break;
            }
            if (depth >= options_.limits.max_steps_per_cycle) {
                emit(CycleEnd::limit, c, "step limit per cycle exceeded");
                break;
            }
            const auto window = c.window(k_);
            if (request_.open_end && touches_unknown(window)) {
                emit(CycleEnd::open, c);
                break;
            }
            if (deterministic_ || !branched_) {
                // More steps than (state, pos) pairs on an unchanged tape repeat one.
                if (segment > spec_.states().size() * c.tape.size()) {
                    emit(CycleEnd::diverges, c, "configuration repeats within a cycle");
                    break;
                }
            } else if (!visited_.insert(VisitKey{c, distances_, rewritten_}).second) {
                break;
            }
            const auto& list = spec_.instructions(c.state, window);
            std::size_t legal = 0;
            const Instruction* only = nullptr;
            for (const auto& i : list) {
                if (offered(c, i)) {
                    ++legal;
                    only = &i;
                }
            }
            if (legal == 0) {
                if (request_.record_paths) path_.push_back({c, Instruction::reject()});
                if (strict_ && c.rewrites > 0)
                    emit(CycleEnd::invalid, c, "halts without restart after an SL-step");
                else
                    emit(CycleEnd::stuck, c, "no transition");
                break;
            }
            if (legal == 1) {
                if (!step(c, *only, segment)) break;
                ++depth;
                continue;
            }
            branched_ = true;
            for (const auto& i : list) {
                if (stopped_) break;
                if (!offered(c, i)) continue;
                Configuration copy = c;
                auto seg = segment;
                const auto mark = path_.size();
                const auto dmark = distances_.size();
                if (step(copy, i, seg)) walk(copy, depth + 1, seg);
                path_.resize(mark);
                distances_.resize(dmark);
                rewritten_.resize(dmark);
            }
            break;
        }
        restore();
    }

    bool offered(const Configuration& c, const Instruction& i) const {
        if (i.kind == InstructionKind::move_right) return c.pos + 1 < c.tape.size();
        if (i.kind == InstructionKind::move_left) return c.pos > 0;
        return true;
    }

    // Executes one step; returns true when the branch continues.
    bool step(Configuration& c, const Instruction& instr, std::size_t& segment) {
        if (request_.record_paths) path_.push_back({c, instr});
        switch (instr.kind) {
            case InstructionKind::accept:
            case InstructionKind::reject: {
                auto end = instr.kind == InstructionKind::accept ? CycleEnd::accept : CycleEnd::reject;
                if (strict_ && c.rewrites > 0)
                    emit(CycleEnd::invalid, c, "SL-step in a tail");
                else
                    emit(end, c);
                return false;
            }
            case InstructionKind::restart:
                if (strict_ && c.rewrites == 0) {
                    emit(CycleEnd::invalid, c, "cycle without an SL-step");
                    return false;
                }
                emit(CycleEnd::restart, c);
                return false;
            case InstructionKind::rewrite: {
                if (strict_ && c.rewrites + 1 > mr_) {
                    emit(CycleEnd::invalid, c, "more SL-steps in one cycle than the mr degree allows");
                    return false;
                }
                distances_.push_back(right_distance(c));
                apply(spec_, c, instr, c.window(k_).size());
                rewritten_.push_back(c.contents());
                segment = 0;
                return true;
            }
            default:
                apply(spec_, c, instr, 0);
                ++segment;
                return true;
        }
    }

    const AutomatonSpec& spec_;
    const EngineOptions& options_;
    Budget& budget_;
    const ExploreRequest& request_;
    const std::function<bool(const CycleResult&)>& visit_;
    std::size_t k_;
    bool strict_ = true;
    unsigned mr_ = 1;
    bool deterministic_ = true;
    bool stopped_ = false;
    bool branched_ = false;  // the visited set is only needed below a branch point
    Configuration start_;
    std::vector<TraceStep> path_;
    std::vector<std::size_t> distances_;
    std::vector<Word> rewritten_;
    std::unordered_set<VisitKey, VisitKeyHash> visited_;
};

}  // namespace

std::vector<Successor> successors(const AutomatonSpec& spec, const Configuration& config) {
    std::vector<Successor> out;
    const auto window = config.window(spec.window());
    for (const auto& instr : spec.instructions(config.state, window)) {
        Configuration next = config;
        if (apply(spec, next, instr, window.size())) out.push_back({instr, std::move(next)});
    }
    return out;
}

void explore_cycle(const AutomatonSpec& spec, std::span<const SymbolId> word, const EngineOptions& options,
                   Budget& budget, const ExploreRequest& request,
                   const std::function<bool(const CycleResult&)>& visit) {
    for (auto s : word)
        if (!spec.alphabet().is_working(s)) throw PreconditionError("word contains a symbol outside the working alphabet");
    Explorer(spec, word, options, budget, request, visit).run();
}

CycleEnd deterministic_phase(const AutomatonSpec& spec, Word& word, const EngineOptions& options) {
    thread_local Word tape;
    tape.clear();
    tape.push_back(kLeftSentinel);
    tape.insert(tape.end(), word.begin(), word.end());
    tape.push_back(kRightSentinel);
    const bool strict = options.discipline == CycleDiscipline::strict;
    const unsigned mr = std::max(1u, spec.flags().mr_degree);
    const std::size_t k = spec.window();
    std::size_t pos = 0, segment = 0;
    unsigned rewrites = 0;
    StateId state = spec.initial();
    for (std::size_t steps = 0; steps < options.limits.max_steps_per_cycle; ++steps) {
        const auto end = std::min(pos + k, tape.size());
        const WindowContent window(std::span<const SymbolId>(tape.data() + pos, end - pos));
        if (segment > spec.states().size() * tape.size()) return CycleEnd::diverges;
        const auto& list = spec.instructions(state, window);
        const Instruction* instr = nullptr;
        for (const auto& i : list) {
            if (i.kind == InstructionKind::move_right && pos + 1 >= tape.size()) continue;
            if (i.kind == InstructionKind::move_left && pos == 0) continue;
            instr = &i;
            break;
        }
        if (!instr) return strict && rewrites > 0 ? CycleEnd::invalid : CycleEnd::stuck;
        switch (instr->kind) {
            case InstructionKind::move_right: ++pos; ++segment; state = instr->next; break;
            case InstructionKind::move_left: --pos; ++segment; state = instr->next; break;
            case InstructionKind::rewrite: {
                if (strict && rewrites + 1 > mr) return CycleEnd::invalid;
                const auto& v = instr->target;
                const auto u_size = window.size();
                tape.erase(tape.begin() + static_cast<std::ptrdiff_t>(pos + v.size()),
                           tape.begin() + static_cast<std::ptrdiff_t>(pos + u_size));
                std::copy(v.begin(), v.end(), tape.begin() + static_cast<std::ptrdiff_t>(pos));
                const auto shift = u_size - v.size();
                pos = pos > shift ? pos - shift : 0;
                state = instr->next;
                ++rewrites;
                segment = 0;
                break;
            }
            case InstructionKind::restart:
                if (strict && rewrites == 0) return CycleEnd::invalid;
                word.assign(tape.begin() + 1, tape.end() - 1);
                return CycleEnd::restart;
            case InstructionKind::accept:
                return strict && rewrites > 0 ? CycleEnd::invalid : CycleEnd::accept;
            case InstructionKind::reject:
                return strict && rewrites > 0 ? CycleEnd::invalid : CycleEnd::reject;
        }
    }
    return CycleEnd::limit;
}

Trace run_deterministic(const AutomatonSpec& spec, std::span<const SymbolId> word, const EngineOptions& options) {
    if (!spec.is_deterministic()) throw PreconditionError("run_deterministic needs a deterministic automaton");
    Trace trace;
    Budget budget(options.limits);
    Word tape(word.begin(), word.end());
    const ExploreRequest request{.record_paths = true};
    for (std::size_t cycle = 0;; ++cycle) {
        if (cycle >= options.limits.max_total_cycles) {
            trace.outcome = Outcome::limit_exceeded;
            trace.note = "cycle limit exceeded";
            return trace;
        }
        CycleResult last;
        explore_cycle(spec, tape, options, budget, request, [&](const CycleResult& r) {
            trace.steps.insert(trace.steps.end(), r.path.begin(), r.path.end());
            last.end = r.end;
            last.tape = r.tape;
            last.detail = r.detail;
            return false;
        });
        switch (last.end) {
            case CycleEnd::restart: tape = last.tape; continue;
            case CycleEnd::accept: trace.outcome = Outcome::accept; return trace;
            case CycleEnd::reject: trace.outcome = Outcome::reject; return trace;
            case CycleEnd::stuck:
                trace.outcome = Outcome::reject;
                trace.stuck = true;
                trace.note = "stuck";
                return trace;
            case CycleEnd::invalid: trace.outcome = Outcome::invalid_cycle; break;
            case CycleEnd::diverges: trace.outcome = Outcome::diverges; break;
            default: trace.outcome = Outcome::limit_exceeded; break;
        }
        trace.note = last.detail;
        return trace;
    }
}

BasicDecider::BasicDecider(const AutomatonSpec& spec, EngineOptions options, bool memoize)
    : spec_(spec), options_(options), memoize_(memoize) {}

Membership BasicDecider::status(std::span<const SymbolId> word) {
    Budget budget(options_.limits);
    return search(Word(word.begin(), word.end()), budget);
}

Membership BasicDecider::search(const Word& word, Budget& budget) {
    if (memoize_) {
        if (auto it = memo_.find(word); it != memo_.end()) return it->second;
    }
    if (std::find(stack_.begin(), stack_.end(), word) != stack_.end()) {
        ++loop_hits_;
        return Membership::non_member;
    }
    const auto hits_before = loop_hits_;
    stack_.push_back(word);
    bool member = false, exceeded = false;
    explore_cycle(spec_, word, options_, budget, {}, [&](const CycleResult& r) {
        switch (r.end) {
            case CycleEnd::accept: member = true; return false;
            case CycleEnd::restart: {
                auto s = search(r.tape, budget);
                if (s == Membership::member) {
                    member = true;
                    return false;
                }
                if (s == Membership::resource_exceeded) exceeded = true;
                return true;
            }
            case CycleEnd::limit: exceeded = true; return true;
            default: return true;
        }
    });
    stack_.pop_back();
    if (budget.exhausted && !member) exceeded = true;
    auto result = member ? Membership::member : exceeded ? Membership::resource_exceeded : Membership::non_member;
    const bool tainted = loop_hits_ != hits_before && result == Membership::non_member;
    if (memoize_ && result != Membership::resource_exceeded && !tainted) memo_.emplace(word, result);
    return result;
}

Trace BasicDecider::witness_for(const Word& word) {
    Trace trace;
    Word tape = word;
    Budget budget(options_.limits);
    const ExploreRequest request{.record_paths = true};
    for (std::size_t guard = 0; guard <= word.size() + options_.limits.max_total_cycles; ++guard) {
        bool done = false, advanced = false;
        explore_cycle(spec_, tape, options_, budget, request, [&](const CycleResult& r) {
            if (r.end == CycleEnd::accept) {
                trace.steps.insert(trace.steps.end(), r.path.begin(), r.path.end());
                done = true;
                return false;
            }
            if (r.end == CycleEnd::restart && status(r.tape) == Membership::member) {
                trace.steps.insert(trace.steps.end(), r.path.begin(), r.path.end());
                tape = r.tape;
                advanced = true;
                return false;
            }
            return true;
        });
        if (done) {
            trace.outcome = Outcome::accept;
            return trace;
        }
        if (!advanced) break;
    }
    trace.outcome = Outcome::limit_exceeded;
    trace.note = "witness reconstruction failed";
    return trace;
}

Decision BasicDecider::decide(std::span<const SymbolId> word) {
    Decision d;
    d.verdict = status(word);
    if (d.verdict == Membership::member) d.witness = witness_for(Word(word.begin(), word.end()));
    return d;
}

bool BasicDecider::prefix_determined(std::span<const SymbolId> prefix) {
    Budget budget(options_.limits);
    return open_search(Word(prefix.begin(), prefix.end()), budget);
}

bool BasicDecider::open_search(const Word& prefix, Budget& budget) {
    if (auto it = determined_memo_.find(prefix); it != determined_memo_.end()) return it->second;
    bool determined = true;
    explore_cycle(spec_, prefix, options_, budget, {.record_paths = false, .open_end = true},
                  [&](const CycleResult& r) {
                      switch (r.end) {
                          case CycleEnd::open:
                          case CycleEnd::limit: determined = false; return false;
                          case CycleEnd::restart:
                              if (r.tape == prefix || !open_search(r.tape, budget)) {
                                  determined = false;
                                  return false;
                              }
                              return true;
                          default: return true;
                      }
                  });
    if (budget.exhausted) determined = false;
    determined_memo_.emplace(prefix, determined);
    return determined;
}

Decision decide_basic_membership(const AutomatonSpec& spec, std::span<const SymbolId> word,
                                 const EngineOptions& options) {
    BasicDecider decider(spec, options);
    return decider.decide(word);
}

Decision decide_input_membership(const AutomatonSpec& spec, std::span<const SymbolId> word,
                                 const EngineOptions& options) {
    for (auto s : word)
        if (s >= spec.alphabet().size() || !spec.alphabet().is_input(s))
            throw PreconditionError("input words must be over the input alphabet");
    return decide_basic_membership(spec, word, options);
}

std::vector<CycleRewrite> cycle_rewrites(const AutomatonSpec& spec, std::span<const SymbolId> word,
                                         const EngineOptions& options) {
    std::vector<CycleRewrite> out;
    Budget budget(options.limits);
    bool exceeded = false;
    explore_cycle(spec, word, options, budget, {.record_paths = true}, [&](const CycleResult& r) {
        if (r.end == CycleEnd::limit) exceeded = true;
        if (r.end != CycleEnd::restart) return true;
        for (const auto& existing : out)
            if (existing.to == r.tape) return true;
        out.push_back({Word(word.begin(), word.end()), r.tape, std::vector<TraceStep>(r.path.begin(), r.path.end())});
        return true;
    });
    if (exceeded) throw ResourceExceeded("limits exceeded while enumerating cycle rewrites");
    std::sort(out.begin(), out.end(), [](const CycleRewrite& a, const CycleRewrite& b) { return length_lex_less(a.to, b.to); });
    return out;
}

std::string replay_trace(const AutomatonSpec& spec, const Trace& trace) {
    if (trace.steps.empty()) return "empty trace";
    const auto& first = trace.steps.front().config;
    if (first.state != spec.initial() || first.pos != 0 || first.rewrites != 0)
        return "trace does not start in a restarting configuration";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& [config, instr] = trace.steps[i];
        const bool last = i + 1 == trace.steps.size();
        auto succ = successors(spec, config);
        if (last && trace.stuck) {
            if (!succ.empty()) return "trace claims a stuck halt where a transition exists";
            continue;
        }
        auto it = std::find_if(succ.begin(), succ.end(), [&](const Successor& s) { return s.instruction == instr; });
        if (it == succ.end()) return "step " + std::to_string(i) + ": instruction not applicable";
        const bool terminal = instr.kind == InstructionKind::accept || instr.kind == InstructionKind::reject;
        if (last) continue;  // partial traces end anywhere
        if (terminal) return "step " + std::to_string(i) + ": computation continues after halting";
        if (!(it->config == trace.steps[i + 1].config)) return "step " + std::to_string(i + 1) + ": configuration mismatch";
    }
    const auto last = trace.steps.back().instruction.kind;
    if (trace.outcome == Outcome::accept && last != InstructionKind::accept) return "accepting trace without Accept";
    return {};
}

}  // namespace redukto
