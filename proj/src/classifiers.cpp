#include "redukto/classifiers.hpp"

#include "redukto/languages.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace redukto {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds-up-to-bound";
        case Verdict::violated: return "violated";
        case Verdict::resource_exceeded: return "resource-exceeded";
    }
    return "?";
}

const char* to_string(PreservationMode m) {
    switch (m) {
        case PreservationMode::complete_correctness: return "complete-correctness";
        case PreservationMode::complete_error: return "complete-error";
        case PreservationMode::cycle_correctness: return "cycle-correctness";
        case PreservationMode::cycle_error: return "cycle-error";
    }
    return "?";
}

PreservationMode parse_preservation_mode(std::string_view text) {
    for (auto m : {PreservationMode::complete_correctness, PreservationMode::complete_error,
                   PreservationMode::cycle_correctness, PreservationMode::cycle_error})
        if (text == to_string(m)) return m;
    throw PreconditionError("unknown preservation mode '" + std::string(text) + "'");
}

namespace {

std::string render_window(const Alphabet& alphabet, const WindowContent& w) {
    return w.empty() ? std::string("-") : alphabet.render(w.symbols());
}

std::string render_distances(const std::vector<std::size_t>& d) {
    std::string out;
    for (auto x : d) out += (out.empty() ? "" : " ") + std::to_string(x);
    return out;
}

// D_r at every rewrite step of a trace.
std::vector<std::size_t> trace_distances(const Trace& trace) {
    std::vector<std::size_t> out;
    for (const auto& s : trace.steps)
        if (s.instruction.kind == InstructionKind::rewrite) out.push_back(right_distance(s.config));
    return out;
}

Trace make_trace(std::vector<TraceStep> steps) {
    Trace t;
    t.steps = std::move(steps);
    t.outcome = Outcome::reject;
    if (!t.steps.empty() && t.steps.back().instruction.kind == InstructionKind::accept) t.outcome = Outcome::accept;
    return t;
}

CheckReport new_report(std::string property, std::size_t bound) {
    CheckReport r;
    r.property = std::move(property);
    r.bound = bound;
    return r;
}

struct MonotoneSummary {
    long first = -1;  // largest D_r of a first rewrite over all branches
    bool bad = false;
    bool exceeded = false;
};

class MonotoneChecker {
public:
    MonotoneChecker(const AutomatonSpec& spec, const EngineOptions& options) : spec_(spec), options_(options) {}

    const MonotoneSummary& summary(const Word& w) {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        active_.insert(w);
        MonotoneSummary s;
        std::vector<std::pair<Word, long>> restarts;  // target, last D_r or -1
        Budget budget(options_.limits);
        explore_cycle(spec_, w, options_, budget, {}, [&](const CycleResult& r) {
            if (r.end == CycleEnd::limit) s.exceeded = true;
            const auto& d = r.rewrite_distances;
            if (!d.empty()) s.first = std::max(s.first, static_cast<long>(d.front()));
            for (std::size_t i = 0; i + 1 < d.size(); ++i)
                if (d[i + 1] > d[i]) s.bad = true;
            if (r.end == CycleEnd::restart) restarts.emplace_back(r.tape, d.empty() ? -1 : static_cast<long>(d.back()));
            return true;
        });
        for (const auto& [v, last] : restarts) {
            if (active_.count(v)) continue;
            const auto sub = summary(v);
            s.exceeded = s.exceeded || sub.exceeded;
            if (sub.bad || (last >= 0 && sub.first > last)) s.bad = true;
            if (last < 0) s.first = std::max(s.first, sub.first);
        }
        active_.erase(w);
        return memo_[w] = s;
    }

    // Steps of a computation from w whose rewrite distances increase.
    std::vector<TraceStep> witness(const Word& w) {
        std::vector<TraceStep> out;
        Budget budget(options_.limits);
        explore_cycle(spec_, w, options_, budget, {.record_paths = true}, [&](const CycleResult& r) {
            const auto& d = r.rewrite_distances;
            for (std::size_t i = 0; i + 1 < d.size(); ++i)
                if (d[i + 1] > d[i]) {
                    out.assign(r.path.begin(), r.path.end());
                    return false;
                }
            if (r.end != CycleEnd::restart || r.tape == w) return true;
            const auto sub = summary(r.tape);
            if (!d.empty() && sub.first > static_cast<long>(d.back())) {
                out.assign(r.path.begin(), r.path.end());
                auto rest = first_rewrite(r.tape, sub.first);
                out.insert(out.end(), rest.begin(), rest.end());
                return false;
            }
            if (sub.bad) {
                out.assign(r.path.begin(), r.path.end());
                auto rest = witness(r.tape);
                out.insert(out.end(), rest.begin(), rest.end());
                return false;
            }
            return true;
        });
        return out;
    }

private:
    // Steps from w up to and including a first rewrite at distance `target`.
    std::vector<TraceStep> first_rewrite(const Word& w, long target) {
        std::vector<TraceStep> out;
        Budget budget(options_.limits);
        explore_cycle(spec_, w, options_, budget, {.record_paths = true}, [&](const CycleResult& r) {
            const auto& d = r.rewrite_distances;
            if (!d.empty() && static_cast<long>(d.front()) == target) {
                for (const auto& step : r.path) {
                    out.push_back(step);
                    if (step.instruction.kind == InstructionKind::rewrite) break;
                }
                return false;
            }
            if (d.empty() && r.end == CycleEnd::restart && r.tape != w && summary(r.tape).first == target) {
                out.assign(r.path.begin(), r.path.end());
                auto rest = first_rewrite(r.tape, target);
                out.insert(out.end(), rest.begin(), rest.end());
                return false;
            }
            return true;
        });
        return out;
    }

    const AutomatonSpec& spec_;
    const EngineOptions& options_;
    std::unordered_map<Word, MonotoneSummary, WordHash> memo_;
    std::unordered_set<Word, WordHash> active_;
};

}  // namespace

CheckReport check_determinism(const AutomatonSpec& spec) {
    auto report = new_report("determinism", 0);
    const auto& alphabet = spec.alphabet();
    for (const auto& [key, list] : spec.table().entries)
        if (list.size() > 1)
            report.details.push_back("(" + spec.state_name(key.state) + ", " + render_window(alphabet, key.window) +
                                     ") has " + std::to_string(list.size()) + " instructions");
    for (const auto& [state, list] : spec.table().fallbacks)
        if (list.size() > 1)
            report.details.push_back("(" + spec.state_name(state) + ", *) has " + std::to_string(list.size()) +
                                     " instructions");
    if (!report.details.empty()) report.verdict = Verdict::violated;
    return report;
}

CheckReport check_forms(const AutomatonSpec& spec, std::optional<RewriteForm> required) {
    const auto form = required.value_or(spec.flags().form);
    auto report = new_report(std::string("rewrite-form ") + to_string(form), 0);
    const auto& alphabet = spec.alphabet();
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& [key, list] : spec.table().entries) {
        for (const auto& instr : list) {
            if (instr.kind != InstructionKind::rewrite) continue;
            const auto c = instr.target.size() >= key.window.size() ? RewriteClass::SL_not_DL
                                                                     : classify_rewrite(key.window, instr.target);
            const auto observed = c == RewriteClass::CL          ? RewriteForm::CL
                                  : c == RewriteClass::DL_not_CL ? RewriteForm::DL
                                                                 : RewriteForm::SL;
            ++counts[static_cast<int>(observed)];
            if (static_cast<int>(observed) > static_cast<int>(form))
                report.details.push_back("(" + spec.state_name(key.state) + ", " + render_window(alphabet, key.window) +
                                         ") -> " + render_window(alphabet, instr.target) + " is " + to_string(c));
        }
    }
    if (!report.details.empty()) report.verdict = Verdict::violated;
    report.details.push_back("rewrites: CL " + std::to_string(counts[0]) + ", DL " + std::to_string(counts[1]) +
                             ", SL " + std::to_string(counts[2]));
    return report;
}

namespace {

// Depth-first walk over Γ^{<=n} that skips the extensions of prefixes whose
// computations never read past them (every extension then repeats the
// prefix's behaviour with uniformly shifted positions). Returns the
// length-lex least word accepted by `violates`.
std::optional<Word> least_violation(const AutomatonSpec& spec, std::size_t n, const EngineOptions& options,
                                    const std::function<bool(const Word&)>& violates) {
    BasicDecider decider(spec, options);
    std::optional<Word> best;
    walk_words(spec.alphabet().working_symbols(), n, [&](const Word& w) {
        if (best && (w.size() > best->size() || !length_lex_less(w, *best))) return WalkStep::skip;
        if (violates(w)) {
            best = w;
            return WalkStep::skip;
        }
        return decider.prefix_determined(w) ? WalkStep::skip : WalkStep::descend;
    });
    return best;
}

void mark_exceeded(CheckReport& report, const std::exception& e) {
    report.verdict = Verdict::resource_exceeded;
    report.counterexample.reset();
    report.details.push_back(e.what());
}

}  // namespace

CheckReport check_monotone(const AutomatonSpec& spec, std::size_t n, const EngineOptions& options) {
    auto report = new_report("monotone", n);
    MonotoneChecker checker(spec, options);
    try {
        auto bad = least_violation(spec, n, options, [&](const Word& w) {
            const auto s = checker.summary(w);
            if (s.exceeded) throw ResourceExceeded("limits exceeded on '" + spec.alphabet().render(w) + "'");
            return s.bad;
        });
        if (bad) {
            report.verdict = Verdict::violated;
            auto trace = make_trace(checker.witness(*bad));
            report.counterexample =
                Counterexample{*bad, trace, "right distances at rewrites: " + render_distances(trace_distances(trace))};
        }
    } catch (const ResourceExceeded& e) {
        mark_exceeded(report, e);
    }
    return report;
}

CheckReport check_cycle_soundness(const AutomatonSpec& spec, std::size_t n, const EngineOptions& options,
                                  std::optional<unsigned> mr) {
    const unsigned j = mr.value_or(std::max(1u, spec.flags().mr_degree));
    auto report = new_report("cycle-soundness mr=" + std::to_string(j), n);
    EngineOptions permissive = options;
    permissive.discipline = CycleDiscipline::permissive;
    // Problem description and branch of the first unsound cycle from w.
    auto inspect = [&](const Word& w, std::vector<TraceStep>* path) {
        Budget budget(permissive.limits);
        std::string problem;
        bool exceeded = false;
        explore_cycle(spec, w, permissive, budget, {.record_paths = path != nullptr}, [&](const CycleResult& r) {
            const auto count = r.rewrite_distances.size();
            if (r.end == CycleEnd::limit) {
                exceeded = true;
                return false;
            }
            if (r.end == CycleEnd::restart && count == 0)
                problem = "cycle without an SL-step";
            else if (r.end == CycleEnd::restart && count > j)
                problem = "cycle with " + std::to_string(count) + " SL-steps";
            else if (r.end != CycleEnd::restart && r.end != CycleEnd::diverges && count > 0)
                problem = "SL in tail";
            if (problem.empty()) return true;
            if (path) path->assign(r.path.begin(), r.path.end());
            return false;
        });
        if (exceeded) throw ResourceExceeded("limits exceeded on '" + spec.alphabet().render(w) + "'");
        return problem;
    };
    try {
        auto bad = least_violation(spec, n, permissive, [&](const Word& w) { return !inspect(w, nullptr).empty(); });
        if (bad) {
            report.verdict = Verdict::violated;
            std::vector<TraceStep> path;
            auto problem = inspect(*bad, &path);
            report.counterexample = Counterexample{*bad, make_trace(std::move(path)), problem};
        }
    } catch (const ResourceExceeded& e) {
        mark_exceeded(report, e);
    }
    return report;
}

CheckReport check_preservation(const AutomatonSpec& spec, std::size_t n, PreservationMode mode,
                               const EngineOptions& options, const std::optional<WordPredicate>& reference) {
    auto report = new_report(to_string(mode), n);
    if (mode != PreservationMode::cycle_error && !spec.is_deterministic())
        throw PreconditionError(std::string(to_string(mode)) + " needs a deterministic automaton");
    const bool correctness =
        mode == PreservationMode::complete_correctness || mode == PreservationMode::cycle_correctness;
    const bool complete = mode == PreservationMode::complete_correctness || mode == PreservationMode::complete_error;

    BasicDecider decider(spec, options);
    auto status = [&](const Word& w) {
        if (reference) return (*reference)(w);
        auto s = decider.status(w);
        if (s == Membership::resource_exceeded)
            throw ResourceExceeded("limits exceeded on '" + spec.alphabet().render(w) + "'");
        return s == Membership::member;
    };
    // The first cycle-rewrite of u that breaks the property.
    auto offending = [&](const Word& u) -> std::optional<CycleRewrite> {
        const bool su = status(u);
        for (auto& r : cycle_rewrites(spec, u, options)) {
            const bool sv = status(r.to);
            if (correctness ? (su && !sv) : (!su && sv)) return std::move(r);
        }
        return std::nullopt;
    };
    try {
        auto bad = least_violation(spec, n, options, [&](const Word& u) { return offending(u).has_value(); });
        if (bad) {
            auto r = *offending(*bad);
            report.verdict = Verdict::violated;
            const auto& al = spec.alphabet();
            std::string what = correctness ? "member '" + al.render(*bad) + "' reaches non-member '"
                                           : "non-member '" + al.render(*bad) + "' reaches member '";
            what += al.render(r.to) + "'";
            Trace trace = make_trace(r.witness);
            if (complete) {
                auto full = run_deterministic(spec, *bad, options);
                if (!full.steps.empty()) trace = std::move(full);
            }
            report.counterexample = Counterexample{*bad, std::move(trace), what};
        }
    } catch (const ResourceExceeded& e) {
        mark_exceeded(report, e);
    }
    return report;
}

CheckReport check_shrinking(const AutomatonSpec& spec, const WeightFunction& weights, std::size_t n,
                            const EngineOptions& options) {
    auto report = new_report("shrinking", n);
    const auto& alphabet = spec.alphabet();
    for (auto s : alphabet.working_symbols()) {
        if (weights(s) == 0) {
            report.verdict = Verdict::violated;
            report.details.push_back("weight of '" + alphabet.token(s) + "' is not positive");
        }
    }
    if (report.verdict == Verdict::violated) return report;
    auto offending = [&](const Word& u) -> std::optional<CycleRewrite> {
        const auto wu = weights.of(u);
        for (auto& r : cycle_rewrites(spec, u, options))
            if (weights.of(r.to) >= wu) return std::move(r);
        return std::nullopt;
    };
    try {
        auto bad = least_violation(spec, n, options, [&](const Word& u) { return offending(u).has_value(); });
        if (bad) {
            auto r = *offending(*bad);
            report.verdict = Verdict::violated;
            report.counterexample = Counterexample{
                *bad, make_trace(r.witness),
                "weight " + std::to_string(weights.of(*bad)) + " -> " + std::to_string(weights.of(r.to)) + " on '" +
                    alphabet.render(r.to) + "'"};
        }
    } catch (const ResourceExceeded& e) {
        mark_exceeded(report, e);
    }
    return report;
}

CheckReport sweep_window_rewrites(std::size_t k, std::size_t max_n) {
    if (k < 2 || k > kMaxWindow) throw PreconditionError("window size out of range");
    auto report = new_report("window-" + std::to_string(k) + " rewrite sweep", max_n);
    constexpr SymbolId a = 2, b = 3, c = 4;
    const std::vector<SymbolId> letters = {a, b, c};
    auto in_lk = [&](const Word& w) {
        std::size_t i = 0, na = 0, nc = 0, nb = 0;
        while (i < w.size() && w[i] == a) ++na, ++i;
        while (i < w.size() && w[i] == c) ++nc, ++i;
        while (i < w.size() && w[i] == b) ++nb, ++i;
        return i == w.size() && na == nb && nc == k - 1;
    };
    std::size_t checked = 0;
    for (std::size_t n = 0; n <= max_n; ++n) {
        Word tape{kLeftSentinel};
        tape.insert(tape.end(), n, a);
        tape.insert(tape.end(), k - 1, c);
        tape.insert(tape.end(), n, b);
        tape.push_back(kRightSentinel);
        for (std::size_t p = 0; p < tape.size(); ++p) {
            const auto end = std::min(p + k, tape.size());
            const bool left = tape[p] == kLeftSentinel, right = tape[end - 1] == kRightSentinel;
            const std::size_t fixed = (left ? 1 : 0) + (right ? 1 : 0);
            const std::size_t u_size = end - p;
            // Every shorter replacement with the sentinels kept in place.
            for (std::size_t len = fixed; len < u_size; ++len) {
                for_each_word(letters, len - fixed, [&](const Word& inner) {
                    if (inner.size() != len - fixed) return true;
                    Word result(tape.begin() + 1, tape.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(p, 1)));
                    if (p == 0) result.clear();
                    result.insert(result.end(), inner.begin(), inner.end());
                    if (end < tape.size()) result.insert(result.end(), tape.begin() + static_cast<std::ptrdiff_t>(end), tape.end() - 1);
                    ++checked;
                    const bool keeps_prefix =
                        result.size() >= n && std::all_of(result.begin(), result.begin() + static_cast<std::ptrdiff_t>(n),
                                                          [&](SymbolId s) { return s == a; });
                    const bool keeps_suffix =
                        result.size() >= n && std::all_of(result.end() - static_cast<std::ptrdiff_t>(n), result.end(),
                                                          [&](SymbolId s) { return s == b; });
                    if ((keeps_prefix || keeps_suffix) && !in_lk(result)) return true;
                    report.verdict = Verdict::violated;
                    report.details.push_back("n=" + std::to_string(n) + " position " + std::to_string(p) +
                                             " yields a word that escapes the argument");
                    return true;
                });
            }
        }
    }
    report.details.push_back(std::to_string(checked) + " rewrites checked");
    return report;
}

}  // namespace redukto
