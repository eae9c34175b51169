#include "redukto/constructions.hpp"

#include "redukto/languages.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <unordered_set>

namespace redukto {

DerivationEncoding derivation_encode(const GnfGrammar& g) {
    g.validate();
    // GNF rules have no empty right-hand sides, so λ is never generated.
    DerivationEncoding enc;
    enc.source = g;
    enc.encoded.nonterminals = g.nonterminals;
    enc.encoded.start = g.start;
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const auto& r = g.rules[i];
        auto symbol = "(" + std::to_string(i + 1) + "," + r.head + ")";
        enc.symbols.push_back(symbol);
        enc.image.push_back(r.head);
        enc.encoded.terminals.push_back(symbol);
        enc.encoded.rules.push_back({r.lhs, symbol, r.tail});
    }
    enc.encoded.validate();
    return enc;
}

bool derivation_check(const GnfGrammar& encoded, std::span<const std::string> omega) {
    std::vector<std::string> stack{encoded.start};
    for (const auto& t : omega) {
        if (stack.empty()) return false;
        auto top = stack.back();
        stack.pop_back();
        auto it = std::find_if(encoded.rules.begin(), encoded.rules.end(),
                               [&](const GnfRule& r) { return r.lhs == top && r.head == t; });
        if (it == encoded.rules.end()) return false;
        for (auto x = it->tail.rbegin(); x != it->tail.rend(); ++x) stack.push_back(*x);
    }
    return stack.empty();
}

namespace {

using Stack = std::vector<std::uint16_t>;  // nonterminal indices, top at the back

struct CompiledGrammar {
    std::uint16_t start = 0;
    // rules_by[nonterminal][symbol] = tails of matching rules
    std::vector<std::map<SymbolId, std::vector<Stack>>> rules_by;
};

CompiledGrammar compile(const GnfGrammar& g, const Alphabet& alphabet) {
    g.validate();
    auto index = [&](const std::string& n) {
        return static_cast<std::uint16_t>(std::find(g.nonterminals.begin(), g.nonterminals.end(), n) -
                                          g.nonterminals.begin());
    };
    CompiledGrammar c;
    c.start = index(g.start);
    c.rules_by.resize(g.nonterminals.size());
    for (const auto& r : g.rules) {
        auto symbol = alphabet.find(r.head);
        if (!symbol) continue;
        Stack tail;
        for (auto x = r.tail.rbegin(); x != r.tail.rend(); ++x) tail.push_back(index(*x));
        c.rules_by[index(r.lhs)][*symbol].push_back(tail);
    }
    return c;
}

// Stacks reachable after reading `w`; empty when no derivation survives.
std::set<Stack> surviving(const CompiledGrammar& c, std::span<const SymbolId> w, std::size_t max_stack) {
    std::set<Stack> current{Stack{c.start}};
    for (auto s : w) {
        std::set<Stack> next;
        for (const auto& st : current) {
            if (st.empty()) continue;
            const auto& by = c.rules_by[st.back()];
            auto it = by.find(s);
            if (it == by.end()) continue;
            for (const auto& tail : it->second) {
                Stack n(st.begin(), st.end() - 1);
                n.insert(n.end(), tail.begin(), tail.end());
                if (n.size() <= max_stack) next.insert(std::move(n));
            }
        }
        current = std::move(next);
        if (current.empty()) break;
    }
    return current;
}

}  // namespace

LanguageOracle grammar_oracle(const GnfGrammar& g, const Alphabet& alphabet) {
    auto c = std::make_shared<CompiledGrammar>(compile(g, alphabet));
    return {[c](std::span<const SymbolId> w) {
                // Every nonterminal yields at least one symbol.
                auto s = surviving(*c, w, w.size() + 1);
                return s.count(Stack{}) > 0;
            },
            [c](std::span<const SymbolId> w) { return !surviving(*c, w, std::numeric_limits<std::size_t>::max()).empty(); }};
}

SynthesisFailed::SynthesisFailed(SynthesisReport report)
    : std::runtime_error("synthesis failed"), report_(std::move(report)) {}

namespace {

Word tape_of(std::span<const SymbolId> w) {
    Word t{kLeftSentinel};
    t.insert(t.end(), w.begin(), w.end());
    t.push_back(kRightSentinel);
    return t;
}

WindowContent window_at(const Word& tape, std::size_t p, std::size_t k) {
    return WindowContent(std::span<const SymbolId>(tape.data() + p, std::min(p + k, tape.size()) - p));
}

bool matches(const Word& tape, std::size_t p, const WindowContent& u) {
    return p + u.size() <= tape.size() && std::equal(u.begin(), u.end(), tape.begin() + static_cast<std::ptrdiff_t>(p));
}

// Contents of `tape` with [p, p + from) replaced by `to`.
Word replaced(const Word& tape, std::size_t p, std::size_t from, const WindowContent& to) {
    Word t(tape.begin(), tape.begin() + static_cast<std::ptrdiff_t>(p));
    t.insert(t.end(), to.begin(), to.end());
    t.insert(t.end(), tape.begin() + static_cast<std::ptrdiff_t>(p + from), tape.end());
    if (t.size() < 2 || t.front() != kLeftSentinel || t.back() != kRightSentinel) return {};
    return Word(t.begin() + 1, t.end() - 1);
}

// Every v obtained from u by deleting one or two non-empty blocks of
// non-sentinel cells.
std::vector<WindowContent> cl_deletions(const WindowContent& u) {
    const std::size_t lo = u.starts_with_left_sentinel() ? 1 : 0;
    const std::size_t hi = u.size() - (u.ends_with_right_sentinel() ? 1 : 0);
    std::set<WindowContent> out;
    auto build = [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        Word v;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!((i >= i1 && i < j1) || (i >= i2 && i < j2))) v.push_back(u[i]);
        if (v.size() < u.size()) out.insert(WindowContent(v));
    };
    for (std::size_t i1 = lo; i1 < hi; ++i1)
        for (std::size_t j1 = i1 + 1; j1 <= hi; ++j1) {
            build(i1, j1, hi, hi);
            for (std::size_t i2 = j1 + 1; i2 < hi; ++i2)
                for (std::size_t j2 = i2 + 1; j2 <= hi; ++j2) build(i1, j1, i2, j2);
        }
    return {out.begin(), out.end()};
}

struct Synthesizer {
    const Alphabet& alphabet;
    std::vector<SymbolId> letters;  // B
    LanguageOracle oracle;          // L(G′) over `alphabet`
    const SynthesisOptions& options;
    std::string name;
    std::optional<HMorphism> morphism;

    std::vector<Word> members;  // up to the safety cap
    std::size_t cap = 0;

    // Window u is a rule site iff the scanner reads exactly u there.
    static bool window_occurs(const Word& tape, std::size_t p, const WindowContent& u, std::size_t k) {
        return matches(tape, p, u) && (u.size() == k || p + u.size() == tape.size());
    }

    bool safe(const WindowContent& u, const WindowContent& v, std::size_t k) const {
        const std::size_t d = u.size() - v.size();
        for (const auto& w : members) {
            const auto tape = tape_of(w);
            for (std::size_t p = 0; p < tape.size(); ++p)
                if (window_occurs(tape, p, u, k) && !oracle.contains(replaced(tape, p, u.size(), v))) return false;
        }
        for (const auto& w : members) {
            if (w.size() + d > cap) continue;
            const auto tape = tape_of(w);
            const std::size_t first = v.starts_with_left_sentinel() ? 0 : 1;
            const std::size_t last = v.starts_with_left_sentinel() ? 0 : tape.size() - 1;
            for (std::size_t p = first; p <= last; ++p) {
                if (!matches(tape, p, v)) continue;
                if (v.ends_with_right_sentinel() != (p + v.size() == tape.size())) continue;
                if (!oracle.contains(replaced(tape, p, v.size(), u))) return false;
            }
        }
        return true;
    }

    AutomatonSpec assemble(std::size_t k, const std::map<WindowContent, WindowContent>& rules,
                           const std::set<WindowContent>& viable) const {
        TransitionTable table;
        const StateId q0 = 0, q1 = 1, q2 = 2, qr = 3;
        for (const auto& u : viable) {
            const bool left = u.starts_with_left_sentinel(), right = u.ends_with_right_sentinel();
            auto rule = rules.find(u);
            if (left) {
                if (right) {
                    Word inner(u.begin() + 1, u.end() - 1);
                    if (oracle.contains(inner)) table.add(q0, u, Instruction::accept());
                } else if (rule != rules.end()) {
                    table.add(q0, u, Instruction::rewrite(qr, rule->second));
                } else {
                    table.add(q0, u, Instruction::move_right(q1));
                }
                continue;
            }
            for (auto q : {q1, q2}) {
                if (q == q1 && right && u.size() == k && oracle.contains(Word(u.begin(), u.end() - 1))) {
                    table.add(q, u, Instruction::accept());
                } else if (rule != rules.end()) {
                    table.add(q, u, Instruction::rewrite(qr, rule->second));
                } else if (!right) {
                    table.add(q, u, Instruction::move_right(q2));
                }
            }
        }
        for (auto q : {q0, q1, q2}) table.add_fallback(q, Instruction::reject());
        table.add_fallback(qr, Instruction::restart());
        ClassFlags flags;
        flags.direction = Direction::R;
        flags.form = RewriteForm::CL;
        flags.aux = alphabet.has_auxiliary() ? AuxUse::WW : AuxUse::none;
        flags.deterministic = true;
        flags.mr_degree = 1;
        return AutomatonSpec(name, alphabet, {"q0", "q1", "q2", "qr"}, q0, k, flags, std::move(table), morphism);
    }

    std::string render_rule(const WindowContent& u, const WindowContent& v) const {
        auto r = [&](const WindowContent& w) {
            std::string s;
            for (auto x : w) {
                if (!s.empty()) s += ' ';
                s += x == kLeftSentinel ? kLeftSentinelToken : x == kRightSentinel ? kRightSentinelToken : alphabet.token(x);
            }
            return s.empty() ? std::string("-") : s;
        };
        return r(u) + " -> " + r(v);
    }

    SynthesisResult run() {
        SynthesisReport report;
        report.train_length = options.train_length;
        report.validate_length = options.validate_length;
        cap = std::max(options.train_length, options.validate_length) + 2;
        members = enumerate_oracle(oracle, letters, cap);
        const auto top = std::max(options.window, options.max_window);
        if (options.window < 2 || top > kMaxWindow) throw PreconditionError("window size must lie in 2..8");

        for (std::size_t k = options.window; k <= top; ++k) {
            std::set<WindowContent> viable;
            for (const auto& w : members) {
                const auto tape = tape_of(w);
                for (std::size_t p = 0; p < tape.size(); ++p) viable.insert(window_at(tape, p, k));
            }
            std::set<std::pair<WindowContent, WindowContent>> candidates;
            for (const auto& w : members) {
                if (w.size() > options.train_length) continue;
                const auto tape = tape_of(w);
                for (std::size_t p = 0; p < tape.size(); ++p) {
                    const auto u = window_at(tape, p, k);
                    if (u.starts_with_left_sentinel() && u.ends_with_right_sentinel()) continue;
                    for (const auto& v : cl_deletions(u))
                        if (oracle.contains(replaced(tape, p, u.size(), v))) candidates.insert({u, v});
                }
            }
            std::map<WindowContent, WindowContent> rules;
            for (const auto& [u, v] : candidates) {
                if (!safe(u, v, k)) continue;
                auto it = rules.find(u);
                if (it == rules.end() || length_lex_less(v.to_word(), it->second.to_word())) rules[u] = v;
            }
            auto spec = assemble(k, rules, viable);

            std::vector<std::string> failures;
            auto cmp = compare_with_oracle(spec, LanguageKind::basic, options.validate_length, oracle, options.engine);
            if (!cmp.equal) {
                std::string w;
                for (const auto& t : *cmp.counterexample) w += (w.empty() ? "" : " ") + t;
                failures.push_back(std::string(cmp.in_first ? "accepted non-member" : "rejected member") + " '" + w + "'");
            }
            for (const auto& r : {check_monotone(spec, options.validate_length, options.engine),
                                  check_cycle_soundness(spec, options.validate_length, options.engine),
                                  check_forms(spec, RewriteForm::CL), check_determinism(spec)}) {
                if (r.verdict == Verdict::holds) continue;
                std::string line = r.property + " " + to_string(r.verdict);
                if (r.counterexample) line += " on '" + alphabet.render(r.counterexample->word) + "'";
                failures.push_back(line);
            }
            report.attempts.push_back("window " + std::to_string(k) + ": " + std::to_string(rules.size()) + " rules, " +
                                      (failures.empty() ? "validated" : std::to_string(failures.size()) + " failures"));
            report.counterexamples = failures;
            report.window = k;
            report.rules.clear();
            for (const auto& [u, v] : rules) report.rules.push_back({u, v});
            if (failures.empty()) {
                report.success = true;
                return {std::move(spec), std::move(report)};
            }
        }
        throw SynthesisFailed(std::move(report));
    }
};

// Stack replay oracle for G′; symbols outside B never belong.
LanguageOracle derivation_oracle(const DerivationEncoding& enc, const Alphabet& alphabet) {
    return grammar_oracle(enc.encoded, alphabet);
}

}  // namespace

SynthesisResult synthesize_reduction_system(const DerivationEncoding& encoding, const SynthesisOptions& options) {
    Alphabet alphabet;
    std::vector<SymbolId> letters;
    for (const auto& s : encoding.symbols) letters.push_back(alphabet.add(s, SymbolRole::input));
    Synthesizer s{alphabet, letters, derivation_oracle(encoding, alphabet), options, "reduction", std::nullopt, {}, 0};
    return s.run();
}

Alphabet hrrwwc_alphabet(const GnfGrammar& g) {
    Alphabet alphabet;
    for (const auto& t : g.terminals) alphabet.add(t, SymbolRole::input);
    for (const auto& s : derivation_encode(g).symbols) alphabet.add(s, SymbolRole::auxiliary);
    return alphabet;
}

SynthesisResult build_hrrwwc(const GnfGrammar& g, const SynthesisOptions& options, std::string name) {
    auto encoding = derivation_encode(g);
    Alphabet alphabet = hrrwwc_alphabet(g);
    std::vector<SymbolId> letters;
    for (const auto& s : encoding.symbols) letters.push_back(alphabet.at(s));
    auto h = HMorphism::identity_on_input(alphabet);
    for (std::size_t i = 0; i < letters.size(); ++i) h.set(letters[i], alphabet.at(encoding.image[i]));
    Synthesizer s{alphabet, letters, derivation_oracle(encoding, alphabet), options, std::move(name), h, {}, 0};
    auto result = s.run();

    // The contract of the whole automaton, on top of the synthesizer's own checks.
    const auto& spec = result.automaton;
    const auto n = options.validate_length;
    LanguageQuery input{LanguageKind::input, n, options.engine};
    if (!enumerate_language(spec, input).empty()) result.report.counterexamples.push_back("input language not empty");
    LanguageQuery hp{LanguageKind::hproper, n, options.engine};
    auto produced = enumerate_language(spec, hp);
    auto expected = enumerate_oracle(grammar_oracle(g, alphabet), alphabet.input_symbols(), n);
    auto cmp = compare_word_lists(alphabet, produced, alphabet, expected);
    if (!cmp.equal) {
        std::string w;
        for (const auto& t : *cmp.counterexample) w += (w.empty() ? "" : " ") + t;
        result.report.counterexamples.push_back("h-proper language differs on '" + w + "'");
    }
    if (!result.report.counterexamples.empty()) {
        result.report.success = false;
        throw SynthesisFailed(result.report);
    }
    return result;
}

std::size_t dga(const AutomatonSpec& spec, SymbolId a) {
    if (!spec.morphism()) throw PreconditionError("automaton has no morphism h");
    const auto& h = *spec.morphism();
    std::size_t n = 0;
    for (auto d : spec.alphabet().working_symbols())
        if (h.defined(d) && h(d) == a) ++n;
    return n;
}

namespace {

std::string fresh_state(const std::vector<std::string>& states, std::string base) {
    while (std::find(states.begin(), states.end(), base) != states.end()) base += "_";
    return base;
}

// Every window of size <= k that starts with `head` and continues over
// `letters`: exactly k cells, or fewer cells closed by $.
void for_each_window(const Word& head, std::span<const SymbolId> letters, std::size_t k,
                     const std::function<void(const WindowContent&)>& visit) {
    Word w = head;
    std::function<void()> extend = [&] {
        if (w.size() == k) {
            visit(WindowContent(w));
            return;
        }
        w.push_back(kRightSentinel);
        visit(WindowContent(w));
        w.pop_back();
        for (auto s : letters) {
            w.push_back(s);
            extend();
            w.pop_back();
        }
    };
    extend();
}

}  // namespace

ShrinkingResult to_shrinking(const AutomatonSpec& spec) {
    if (!spec.morphism()) throw PreconditionError("shrinking transform needs a morphism h");
    const std::size_t k = spec.window();
    if (k < 2) throw PreconditionError("shrinking transform needs a window of at least 2");
    const auto& src = spec.alphabet();
    const auto& h = *spec.morphism();

    Alphabet alphabet;
    for (SymbolId s = kRightSentinel + 1; s < src.size(); ++s) alphabet.add(src.token(s), src.role(s));
    std::vector<SymbolId> hat(src.size(), HMorphism::kUndefined);
    for (auto a : src.input_symbols()) hat[a] = alphabet.add(src.token(a) + "^", SymbolRole::auxiliary);
    auto rename = [&](const WindowContent& w) {
        Word out;
        for (auto s : w) out.push_back(s > kRightSentinel && src.is_input(s) ? hat[s] : s);
        return WindowContent(out);
    };

    HMorphism hs = HMorphism::identity_on_input(alphabet);
    for (auto d : src.working_symbols()) hs.set(d, h(d));
    for (auto a : src.input_symbols()) hs.set(hat[a], a);
    WeightFunction weights = WeightFunction::unit(alphabet);
    for (auto a : src.input_symbols()) weights.set(a, dga(spec, a) + 1);

    auto states = spec.states();
    const auto scan = static_cast<StateId>(states.size());
    states.push_back(fresh_state(states, "lex"));
    const auto done = static_cast<StateId>(states.size());
    states.push_back(fresh_state(states, "lex_r"));

    TransitionTable table;
    for (const auto& [key, list] : spec.table().entries)
        for (auto instr : list) {
            if (instr.kind == InstructionKind::rewrite) instr.target = rename(instr.target);
            table.add(key.state, rename(key.window), instr);
        }
    for (const auto& [q, list] : spec.table().fallbacks)
        for (const auto& instr : list) table.add_fallback(q, instr);

    // Replacement options for a raw input symbol.
    std::vector<std::vector<SymbolId>> options(src.size());
    bool unambiguous = true;
    for (auto a : src.input_symbols()) {
        options[a].push_back(hat[a]);
        for (auto d : src.working_symbols())
            if (!src.is_input(d) && h(d) == a) options[a].push_back(d);
        unambiguous = unambiguous && options[a].size() == 1;
    }
    const auto& letters = alphabet.working_symbols();
    auto is_raw = [&](SymbolId s) { return s > kRightSentinel && alphabet.is_input(s); };
    // Window whose cell `at` holds a raw symbol: move on while the next cell
    // is raw too, else replace that symbol.
    auto lexical = [&](StateId q, const WindowContent& u, std::size_t at) {
        if (at + 1 < u.size() && is_raw(u[at + 1])) {
            table.add(q, u, Instruction::move_right(scan));
            return;
        }
        for (auto b : options[u[at]]) {
            Word v = u.to_word();
            v[at] = b;
            table.add(q, u, Instruction::rewrite(done, WindowContent(v)));
        }
    };
    for (auto a : src.input_symbols()) {
        for_each_window({kLeftSentinel, a}, letters, k, [&](const WindowContent& u) { lexical(spec.initial(), u, 1); });
        for_each_window({a}, letters, k, [&](const WindowContent& u) { lexical(scan, u, 0); });
    }
    table.add_fallback(done, Instruction::restart());

    ClassFlags flags = spec.flags();
    flags.form = RewriteForm::SL;
    flags.aux = AuxUse::WW;
    flags.deterministic = spec.flags().deterministic && unambiguous;
    flags.shrinking = true;
    AutomatonSpec out(spec.name() + "_s", alphabet, states, spec.initial(), k, flags, std::move(table), hs, weights);
    return {std::move(out), std::move(weights)};
}

Word hat_word(const AutomatonSpec& source, const AutomatonSpec& shrunk, std::span<const SymbolId> word) {
    Word out;
    for (auto s : word) {
        if (source.alphabet().is_input(s))
            out.push_back(shrunk.alphabet().at(source.alphabet().token(s) + "^"));
        else
            out.push_back(shrunk.alphabet().at(source.alphabet().token(s)));
    }
    return out;
}

std::vector<CheckReport> validate_shrinking(const AutomatonSpec& source, const ShrinkingResult& result,
                                            std::size_t lang_len, std::size_t shrink_len, std::size_t corr_len,
                                            const EngineOptions& options) {
    const auto& ms = result.automaton;
    std::vector<CheckReport> reports;

    CheckReport lang;
    lang.property = "shrinking-language";
    lang.bound = lang_len;
    {
        BasicDecider shrunk(ms, options);
        HProperDecider hp(source, options);
        std::vector<SymbolId> sigma;
        for (auto a : source.alphabet().input_symbols()) sigma.push_back(ms.alphabet().at(source.alphabet().token(a)));
        for_each_word(sigma, lang_len, [&](const Word& w) {
            Word v;
            for (auto s : w) v.push_back(source.alphabet().at(ms.alphabet().token(s)));
            const auto a = shrunk.status(w), b = hp.status(v);
            if (a == Membership::resource_exceeded || b == Membership::resource_exceeded) {
                lang.verdict = Verdict::resource_exceeded;
                lang.details.push_back("limits exceeded on '" + ms.alphabet().render(w) + "'");
                return false;
            }
            if (a == b) return true;
            lang.verdict = Verdict::violated;
            Counterexample ce;
            ce.word = w;
            if (a == Membership::member) {
                ce.trace = shrunk.decide(w).witness;
                ce.explanation = "accepted by the shrinking automaton, not in the source h-proper language";
            } else {
                ce.explanation = "in the source h-proper language, rejected by the shrinking automaton";
            }
            lang.counterexample = std::move(ce);
            return false;
        });
    }
    reports.push_back(std::move(lang));

    reports.push_back(check_shrinking(ms, result.weights, shrink_len, options));

    CheckReport corr;
    corr.property = "reduction-correspondence";
    corr.bound = corr_len;
    try {
        BasicDecider decider(source, options);
        walk_words(source.alphabet().working_symbols(), corr_len, [&](const Word& w) {
            std::set<Word> expected, produced;
            for (const auto& r : cycle_rewrites(source, w, options)) expected.insert(hat_word(source, ms, r.to));
            const auto hw = hat_word(source, ms, w);
            for (const auto& r : cycle_rewrites(ms, hw, options))
                if (r.to.size() < hw.size()) produced.insert(r.to);
            if (expected != produced) {
                corr.verdict = Verdict::violated;
                Counterexample ce;
                ce.word = hw;
                ce.explanation = std::to_string(expected.size()) + " source reductions, " +
                                 std::to_string(produced.size()) + " length-reducing reductions of the transform";
                corr.counterexample = std::move(ce);
                return WalkStep::stop;
            }
            return decider.prefix_determined(w) ? WalkStep::skip : WalkStep::descend;
        });
    } catch (const ResourceExceeded& e) {
        corr.verdict = Verdict::resource_exceeded;
        corr.details.push_back(e.what());
    }
    reports.push_back(std::move(corr));
    return reports;
}

}  // namespace redukto
