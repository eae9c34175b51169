#include "redukto/io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace redukto {

namespace {

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::string join(const std::vector<std::string>& parts, std::size_t from = 0) {
    std::string out;
    for (std::size_t i = from; i < parts.size(); ++i) out += (i == from ? "" : " ") + parts[i];
    return out;
}

std::uint64_t parse_number(const std::string& text, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError(line, "expected a number, got '" + text + "'");
    return v;
}

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> lines_of(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = split(line);
        if (!tokens.empty()) out.push_back({number, std::move(tokens)});
        start = end + 1;
    }
    return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string symbol_token(const Alphabet& alphabet, SymbolId s) {
    if (s == kLeftSentinel) return std::string(kLeftSentinelToken);
    if (s == kRightSentinel) return std::string(kRightSentinelToken);
    if (s == kUnknownCell) return "?";
    return alphabet.token(s);
}

SymbolId parse_cell(const Alphabet& alphabet, const std::string& t, std::size_t line) {
    if (t == kLeftSentinelToken) return kLeftSentinel;
    if (t == kRightSentinelToken) return kRightSentinel;
    auto s = alphabet.find(t);
    if (!s) throw ParseError(line, "unknown symbol '" + t + "'");
    return *s;
}

}  // namespace

std::string render_window(const Alphabet& alphabet, std::span<const SymbolId> w) {
    if (w.empty()) return "-";
    std::string out;
    for (auto s : w) out += (out.empty() ? "" : " ") + symbol_token(alphabet, s);
    return out;
}

std::string render_word(const Alphabet& alphabet, std::span<const SymbolId> w) { return render_window(alphabet, w); }

std::string render_instruction(const AutomatonSpec& spec, const Instruction& instr) {
    switch (instr.kind) {
        case InstructionKind::move_right: return "MVR " + spec.state_name(instr.next);
        case InstructionKind::move_left: return "MVL " + spec.state_name(instr.next);
        case InstructionKind::rewrite:
            return "SL " + spec.state_name(instr.next) + " " + render_window(spec.alphabet(), instr.target.symbols());
        case InstructionKind::restart: return "Restart";
        case InstructionKind::accept: return "Accept";
        case InstructionKind::reject: return "Reject";
    }
    return "?";
}

std::string render_automaton(const AutomatonSpec& spec) {
    const auto& al = spec.alphabet();
    const auto& f = spec.flags();
    std::ostringstream out;
    out << "name " << spec.name() << "\n";
    out << "class deterministic=" << yes_no(f.deterministic) << " direction=" << to_string(f.direction)
        << " form=" << to_string(f.form) << " aux=" << to_string(f.aux) << " mr=" << f.mr_degree
        << " shrinking=" << yes_no(f.shrinking) << "\n";
    out << "window " << spec.window() << "\n";
    out << "input";
    for (auto a : al.input_symbols()) out << " " << al.token(a);
    out << "\n";
    if (al.has_auxiliary()) {
        out << "work";
        for (auto d : al.working_symbols())
            if (!al.is_input(d)) out << " " << al.token(d);
        out << "\n";
    }
    if (spec.morphism()) {
        const auto& h = *spec.morphism();
        out << "morphism";
        for (auto d : al.working_symbols())
            if (!h.defined(d) || h(d) != d) out << " " << al.token(d) << ":" << (h.defined(d) ? al.token(h(d)) : "?");
        out << "\n";
    }
    if (spec.weights()) {
        out << "weights";
        for (auto d : al.working_symbols()) out << " " << al.token(d) << ":" << (*spec.weights())(d);
        out << "\n";
    }
    out << "states";
    for (const auto& q : spec.states()) out << " " << q;
    out << "\n";
    out << "initial " << spec.state_name(spec.initial()) << "\n";
    const auto& table = spec.table();
    for (StateId q = 0; q < spec.states().size(); ++q) {
        for (auto it = table.entries.lower_bound(TransitionKey{q, {}}); it != table.entries.end() && it->first.state == q;
             ++it)
            for (const auto& instr : it->second)
                out << "trans " << spec.state_name(q) << " " << render_window(al, it->first.window.symbols()) << " -> "
                    << render_instruction(spec, instr) << "\n";
        if (auto it = table.fallbacks.find(q); it != table.fallbacks.end())
            for (const auto& instr : it->second)
                out << "trans " << spec.state_name(q) << " * -> " << render_instruction(spec, instr) << "\n";
    }
    return out.str();
}

AutomatonSpec parse_automaton(std::string_view text) {
    auto lines = lines_of(text);
    std::optional<std::string> name;
    ClassFlags flags;
    std::size_t window = 0;
    std::vector<std::string> input, work, states;
    std::optional<std::string> initial;
    const Line* morphism_line = nullptr;
    const Line* weights_line = nullptr;
    std::vector<const Line*> trans;
    auto once = [](bool seen, const Line& l) {
        if (seen) throw ParseError(l.number, "duplicate '" + l.tokens[0] + "' line");
    };
    bool have_class = false, have_input = false, have_work = false, have_states = false;
    for (const auto& l : lines) {
        const auto& key = l.tokens[0];
        if (key == "name") {
            once(name.has_value(), l);
            if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'name <identifier>'");
            name = l.tokens[1];
        } else if (key == "class") {
            once(have_class, l);
            have_class = true;
            for (std::size_t i = 1; i < l.tokens.size(); ++i) {
                const auto& kv = l.tokens[i];
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw ParseError(l.number, "expected key=value, got '" + kv + "'");
                auto k = kv.substr(0, eq), v = kv.substr(eq + 1);
                auto yes = [&] {
                    if (v != "yes" && v != "no") throw ParseError(l.number, "expected yes or no for " + k);
                    return v == "yes";
                };
                if (k == "deterministic") {
                    flags.deterministic = yes();
                } else if (k == "shrinking") {
                    flags.shrinking = yes();
                } else if (k == "mr") {
                    flags.mr_degree = static_cast<unsigned>(parse_number(v, l.number));
                } else if (k == "direction") {
                    if (v == "R") flags.direction = Direction::R;
                    else if (v == "RR") flags.direction = Direction::RR;
                    else if (v == "RL") flags.direction = Direction::RL;
                    else throw ParseError(l.number, "unknown direction '" + v + "'");
                } else if (k == "form") {
                    if (v == "CL") flags.form = RewriteForm::CL;
                    else if (v == "DL") flags.form = RewriteForm::DL;
                    else if (v == "SL") flags.form = RewriteForm::SL;
                    else throw ParseError(l.number, "unknown rewrite form '" + v + "'");
                } else if (k == "aux") {
                    if (v == "none") flags.aux = AuxUse::none;
                    else if (v == "W") flags.aux = AuxUse::W;
                    else if (v == "WW") flags.aux = AuxUse::WW;
                    else throw ParseError(l.number, "unknown auxiliary use '" + v + "'");
                } else {
                    throw ParseError(l.number, "unknown class key '" + k + "'");
                }
            }
        } else if (key == "window") {
            once(window != 0, l);
            if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'window <k>'");
            window = parse_number(l.tokens[1], l.number);
            if (window < 1 || window > kMaxWindow) throw ParseError(l.number, "window size must lie in 1..8");
        } else if (key == "input") {
            once(have_input, l);
            have_input = true;
            input.assign(l.tokens.begin() + 1, l.tokens.end());
        } else if (key == "work") {
            once(have_work, l);
            have_work = true;
            work.assign(l.tokens.begin() + 1, l.tokens.end());
        } else if (key == "morphism") {
            once(morphism_line != nullptr, l);
            morphism_line = &l;
        } else if (key == "weights") {
            once(weights_line != nullptr, l);
            weights_line = &l;
        } else if (key == "states") {
            once(have_states, l);
            have_states = true;
            states.assign(l.tokens.begin() + 1, l.tokens.end());
        } else if (key == "initial") {
            once(initial.has_value(), l);
            if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'initial <state>'");
            initial = l.tokens[1];
        } else if (key == "trans") {
            trans.push_back(&l);
        } else {
            throw ParseError(l.number, "unknown keyword '" + key + "'");
        }
    }
    const std::size_t last = lines.empty() ? 1 : lines.back().number;
    if (!name) throw ParseError(last, "missing 'name' line");
    if (window == 0) throw ParseError(last, "missing 'window' line");
    if (!have_input) throw ParseError(last, "missing 'input' line");
    if (states.empty()) throw ParseError(last, "missing 'states' line");
    if (!initial) throw ParseError(last, "missing 'initial' line");

    Alphabet alphabet;
    try {
        for (const auto& t : input) alphabet.add(t, SymbolRole::input);
        for (const auto& t : work) alphabet.add(t, SymbolRole::auxiliary);
    } catch (const PreconditionError& e) {
        throw ParseError(1, e.what());
    }
    auto state_of = [&](const std::string& q, std::size_t line) {
        auto it = std::find(states.begin(), states.end(), q);
        if (it == states.end()) throw ParseError(line, "unknown state '" + q + "'");
        return static_cast<StateId>(it - states.begin());
    };
    for (std::size_t i = 0; i < states.size(); ++i)
        if (std::find(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(i), states[i]) !=
            states.begin() + static_cast<std::ptrdiff_t>(i))
            throw ParseError(last, "duplicate state '" + states[i] + "'");

    auto pairs = [&](const Line& l, const std::function<void(SymbolId, const std::string&)>& take) {
        for (std::size_t i = 1; i < l.tokens.size(); ++i) {
            const auto& kv = l.tokens[i];
            auto colon = kv.rfind(':');
            if (colon == std::string::npos) throw ParseError(l.number, "expected symbol:value, got '" + kv + "'");
            auto s = alphabet.find(kv.substr(0, colon));
            if (!s) throw ParseError(l.number, "unknown symbol '" + kv.substr(0, colon) + "'");
            take(*s, kv.substr(colon + 1));
        }
    };
    std::optional<HMorphism> h;
    if (morphism_line) {
        h = HMorphism::identity_on_input(alphabet);
        pairs(*morphism_line, [&](SymbolId s, const std::string& v) {
            auto t = alphabet.find(v);
            if (!t || !alphabet.is_input(*t)) throw ParseError(morphism_line->number, "'" + v + "' is not an input symbol");
            h->set(s, *t);
        });
    }
    std::optional<WeightFunction> weights;
    if (weights_line) {
        weights = WeightFunction::unit(alphabet);
        pairs(*weights_line, [&](SymbolId s, const std::string& v) { weights->set(s, parse_number(v, weights_line->number)); });
    }

    TransitionTable table;
    for (const auto* l : trans) {
        const auto& t = l->tokens;
        auto arrow = std::find(t.begin(), t.end(), "->");
        if (t.size() < 4 || arrow == t.end() || arrow - t.begin() < 3)
            throw ParseError(l->number, "expected 'trans <state> <window> -> <instruction>'");
        const auto q = state_of(t[1], l->number);
        std::vector<std::string> lhs(t.begin() + 2, arrow), rhs(arrow + 1, t.end());
        if (rhs.empty()) throw ParseError(l->number, "missing instruction");
        Instruction instr;
        const auto& op = rhs[0];
        if (op == "Accept" || op == "Reject" || op == "Restart") {
            if (rhs.size() != 1) throw ParseError(l->number, "unexpected tokens after " + op);
            instr = op == "Accept" ? Instruction::accept() : op == "Reject" ? Instruction::reject() : Instruction::restart();
        } else if (op == "MVR" || op == "MVL") {
            if (rhs.size() != 2) throw ParseError(l->number, "expected '" + op + " <state>'");
            auto next = state_of(rhs[1], l->number);
            instr = op == "MVR" ? Instruction::move_right(next) : Instruction::move_left(next);
        } else if (op == "SL") {
            if (rhs.size() < 3) throw ParseError(l->number, "expected 'SL <state> <target>'");
            auto next = state_of(rhs[1], l->number);
            Word v;
            if (!(rhs.size() == 3 && rhs[2] == "-"))
                for (std::size_t i = 2; i < rhs.size(); ++i) v.push_back(parse_cell(alphabet, rhs[i], l->number));
            if (v.size() > kMaxWindow) throw ParseError(l->number, "rewrite target longer than any window");
            instr = Instruction::rewrite(next, WindowContent(v));
        } else {
            throw ParseError(l->number, "unknown instruction '" + op + "'");
        }
        if (lhs.size() == 1 && lhs[0] == "*") {
            table.add_fallback(q, instr);
            continue;
        }
        Word u;
        for (const auto& x : lhs) u.push_back(parse_cell(alphabet, x, l->number));
        if (u.size() > window) throw ParseError(l->number, "window content longer than the window");
        table.add(q, WindowContent(u), instr);
    }
    try {
        return AutomatonSpec(*name, alphabet, states, state_of(*initial, last), window, flags, std::move(table), h, weights);
    } catch (const PreconditionError& e) {
        throw ParseError(last, e.what());
    }
}

std::string render_grammar(const GnfGrammar& g) {
    std::ostringstream out;
    out << "nonterminals " << join(g.nonterminals) << "\n";
    out << "terminals " << join(g.terminals) << "\n";
    out << "start " << g.start << "\n";
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const auto& r = g.rules[i];
        out << "rule " << i + 1 << " " << r.lhs << " -> " << r.head;
        for (const auto& x : r.tail) out << " " << x;
        out << "\n";
    }
    return out.str();
}

GnfGrammar parse_grammar(std::string_view text) {
    GnfGrammar g;
    std::size_t last = 1;
    for (const auto& l : lines_of(text)) {
        last = l.number;
        const auto& t = l.tokens;
        if (t[0] == "nonterminals") {
            g.nonterminals.assign(t.begin() + 1, t.end());
        } else if (t[0] == "terminals") {
            g.terminals.assign(t.begin() + 1, t.end());
        } else if (t[0] == "start") {
            if (t.size() != 2) throw ParseError(l.number, "expected 'start <nonterminal>'");
            g.start = t[1];
        } else if (t[0] == "rule") {
            if (t.size() < 5 || t[3] != "->") throw ParseError(l.number, "expected 'rule <i> <A> -> <a> <tail>'");
            if (parse_number(t[1], l.number) != g.rules.size() + 1)
                throw ParseError(l.number, "rules must be numbered 1, 2, ... in order");
            g.rules.push_back({t[2], t[4], std::vector<std::string>(t.begin() + 5, t.end())});
            if (!g.nonterminals.empty() && !g.terminals.empty()) {
                try {
                    GnfGrammar probe = g;
                    if (probe.start.empty()) probe.start = probe.nonterminals.front();
                    probe.validate();
                } catch (const PreconditionError& e) {
                    throw ParseError(l.number, e.what());
                }
            }
        } else {
            throw ParseError(l.number, "unknown keyword '" + t[0] + "'");
        }
    }
    try {
        g.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(last, e.what());
    }
    return g;
}

std::string render_trace(const AutomatonSpec& spec, const Trace& trace) {
    std::ostringstream out;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& [c, instr] = trace.steps[i];
        const auto window = c.window(spec.window());
        out << spec.state_name(c.state) << " " << c.pos << " [" << render_window(spec.alphabet(), window.symbols()) << "] ";
        if (trace.stuck && i + 1 == trace.steps.size())
            out << "(no transition)";
        else
            out << render_instruction(spec, instr);
        out << " | " << render_window(spec.alphabet(), c.tape) << "\n";
    }
    return out.str();
}

std::string render_report(const AutomatonSpec& spec, const CheckReport& report) {
    std::ostringstream out;
    out << "property " << report.property << "\n";
    if (report.bound > 0) out << "bound " << report.bound << "\n";
    out << "verdict " << to_string(report.verdict) << "\n";
    for (const auto& d : report.details) out << "detail " << d << "\n";
    if (report.counterexample) {
        const auto& ce = *report.counterexample;
        out << "word " << render_word(spec.alphabet(), ce.word) << "\n";
        out << "explanation " << ce.explanation << "\n";
        if (!ce.trace.steps.empty()) out << "trace\n" << render_trace(spec, ce.trace);
    }
    return out.str();
}

std::string render_synthesis(const Alphabet& alphabet, const SynthesisReport& report) {
    std::ostringstream out;
    out << "synthesis " << (report.success ? "succeeded" : "failed") << "\n";
    out << "window " << report.window << "\n";
    out << "train-length " << report.train_length << "\n";
    out << "validate-length " << report.validate_length << "\n";
    for (const auto& a : report.attempts) out << "attempt " << a << "\n";
    for (const auto& r : report.rules)
        out << "rule " << render_window(alphabet, r.from.symbols()) << " -> " << render_window(alphabet, r.to.symbols())
            << "\n";
    for (const auto& c : report.counterexamples) out << "counterexample " << c << "\n";
    return out.str();
}

Word parse_word_arg(const Alphabet& alphabet, std::string_view text) {
    auto tokens = split(text);
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "-")) return {};
    Word out;
    if (tokens.size() > 1 || alphabet.find(tokens[0])) {
        for (const auto& t : tokens) {
            auto s = alphabet.find(t);
            if (!s) throw PreconditionError("unknown symbol '" + t + "'");
            out.push_back(*s);
        }
        return out;
    }
    // Greedy longest match over the working alphabet.
    std::string_view rest = tokens[0];
    while (!rest.empty()) {
        std::optional<SymbolId> best;
        std::size_t best_len = 0;
        for (auto s : alphabet.working_symbols()) {
            const auto& t = alphabet.token(s);
            if (t.size() > best_len && rest.substr(0, t.size()) == t) {
                best = s;
                best_len = t.size();
            }
        }
        if (!best) throw PreconditionError("cannot split '" + std::string(text) + "' into symbols");
        out.push_back(*best);
        rest.remove_prefix(best_len);
    }
    return out;
}

Limits parse_limits(std::string_view text, Limits base) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    if (fields.size() > 3) throw PreconditionError("limits take at most three fields: steps,configs,cycles");
    std::size_t* targets[3] = {&base.max_steps_per_cycle, &base.max_configs, &base.max_total_cycles};
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].empty()) continue;
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), v);
        if (ec != std::errc() || ptr != fields[i].data() + fields[i].size() || v == 0)
            throw PreconditionError("malformed limit '" + fields[i] + "'");
        *targets[i] = v;
    }
    return base;
}

}  // namespace redukto
