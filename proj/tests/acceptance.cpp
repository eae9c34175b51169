// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "golden.hpp"
#include "oracles.hpp"
#include "redukto/catalog.hpp"
#include "redukto/classifiers.hpp"
#include "redukto/constructions.hpp"
#include "redukto/io.hpp"
#include "redukto/languages.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

using namespace redukto;

namespace {

struct Check {
    bool pass = true;
    std::string note;

    void fail(const std::string& why) {
        if (pass) note = why;
        pass = false;
    }
};

std::vector<AutomatonSpec> catalog_automata() {
    std::vector<AutomatonSpec> out;
    for (const auto& e : catalog_list())
        if (e.automaton) out.push_back(*e.automaton);
    return out;
}

LanguageOracle token_oracle(const Alphabet& al, std::function<bool(const oracle::Tokens&)> contains,
                            std::function<bool(const oracle::Tokens&)> viable) {
    return {[al, contains](std::span<const SymbolId> w) { return contains(oracle::tokens_of(al, w)); },
            [al, viable](std::span<const SymbolId> w) { return viable(oracle::tokens_of(al, w)); }};
}

// Prefix of some a^n c^m b^n.
bool a_c_b_prefix(const oracle::Tokens& w, std::size_t m) {
    const auto n = oracle::count_run(w, 0, "a");
    const auto c = oracle::count_run(w, n, "c");
    if (n + c == w.size()) return c <= m;
    if (c != m) return false;
    const auto b = oracle::count_run(w, n + c, "b");
    return n + c + b == w.size() && b <= n;
}

// Prefix of some (u c)^j u.
bool copies_prefix(const oracle::Tokens& w, unsigned j) {
    std::vector<oracle::Tokens> parts(1);
    for (const auto& t : w) {
        if (t == "c") parts.emplace_back();
        else parts.back().push_back(t);
    }
    if (parts.size() > j + 1) return false;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto& p = parts[i];
        const bool last = i + 1 == parts.size();
        if (last ? !(p.size() <= parts[0].size() && std::equal(p.begin(), p.end(), parts[0].begin()))
                 : p != parts[0])
            return false;
    }
    return true;
}

// Terminal strings of g up to length n by leftmost derivation.
std::set<oracle::Tokens> derive_all(const GnfGrammar& g, std::size_t n) {
    std::set<oracle::Tokens> out;
    oracle::Tokens done;
    std::vector<std::string> stack{g.start};
    std::function<void()> go = [&] {
        if (stack.empty()) {
            out.insert(done);
            return;
        }
        if (done.size() + stack.size() > n) return;
        const auto top = stack.back();
        for (const auto& r : g.rules) {
            if (r.lhs != top) continue;
            auto saved = stack;
            stack.pop_back();
            stack.insert(stack.end(), r.tail.rbegin(), r.tail.rend());
            done.push_back(r.head);
            go();
            done.pop_back();
            stack = saved;
        }
    };
    go();
    return out;
}

Check me_fidelity() {
    Check o;
    auto m = make_m_e();
    const auto a = m.alphabet().at("a");
    std::vector<std::size_t> lengths;
    for (const auto& w : enumerate_language(m, {LanguageKind::input, 64, {}})) lengths.push_back(w.size());
    if (lengths != std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64}) o.fail("input language up to 64 differs");
    for (std::size_t n : {3, 5, 6, 7, 63})
        if (decide_input_membership(m, Word(n, a)).verdict != Membership::non_member)
            o.fail("a^" + std::to_string(n) + " not rejected");
    for (std::size_t n = 0; n <= 64; ++n)
        if (oracle::power_of_two_as(oracle::Tokens(n, "a")) !=
            (run_deterministic(m, Word(n, a)).outcome == redukto::Outcome::accept))
            o.fail("run disagrees with the closed form on a^" + std::to_string(n));
    o.note = o.pass ? "lengths 1 2 4 8 16 32 64" : o.note;
    return o;
}

Check facts_suite() {
    Check o;
    std::size_t checks = 0;
    for (const auto& spec : catalog_automata()) {
        std::vector<PreservationMode> modes{PreservationMode::cycle_error};
        if (spec.is_deterministic())
            modes.insert(modes.end(), {PreservationMode::complete_correctness, PreservationMode::complete_error,
                                       PreservationMode::cycle_correctness});
        for (auto mode : modes) {
            ++checks;
            auto r = check_preservation(spec, 8, mode);
            if (r.verdict != Verdict::holds) o.fail(spec.name() + " " + to_string(mode) + " " + to_string(r.verdict));
        }
    }
    if (o.pass) o.note = std::to_string(checks) + " checks at length 8, zero violations";
    return o;
}

Check monotonicity() {
    Check o;
    for (const char* name : {"dyck1", "l_2", "l_3", "l_4"})
        if (check_monotone(*catalog_get(name).automaton, 12).verdict != Verdict::holds)
            o.fail(std::string(name) + " not monotone at 12");
    auto m = make_m_e();
    auto r = check_monotone(m, 8);
    if (r.verdict != Verdict::violated || !r.counterexample) {
        o.fail("m_e passes the monotonicity check");
        return o;
    }
    const auto& ce = *r.counterexample;
    if (ce.word.size() > 8) o.fail("witness longer than 8");
    if (!replay_trace(m, ce.trace).empty()) o.fail("witness trace does not replay");
    std::vector<std::size_t> d;
    for (const auto& s : ce.trace.steps)
        if (s.instruction.kind == InstructionKind::rewrite) d.push_back(right_distance(s.config));
    if (std::adjacent_find(d.begin(), d.end(), std::less<>()) == d.end()) o.fail("witness shows no increase");
    if (o.pass) o.note = "m_e witness '" + m.alphabet().render(ce.word) + "', " + ce.explanation;
    return o;
}

Check pipeline() {
    Check o;
    std::string windows;
    for (auto g : {make_anbn_gnf(), make_dyck_gnf()}) {
        SynthesisOptions opt;
        opt.window = 2;
        opt.max_window = 6;
        opt.train_length = 10;
        opt.validate_length = 12;
        try {
            auto result = build_hrrwwc(g, opt);
            const auto& m = result.automaton;
            windows += " " + std::to_string(result.report.window);
            if (!m.is_deterministic()) o.fail("result not deterministic");
            if (check_forms(m, RewriteForm::CL).verdict != Verdict::holds) o.fail("rewrites not CL");
            if (check_monotone(m, 10).verdict != Verdict::holds) o.fail("not monotone at 10");
            if (!enumerate_language(m, {LanguageKind::input, 12, {}}).empty()) o.fail("input language not empty");
            std::set<oracle::Tokens> got;
            for (const auto& w : enumerate_language(m, {LanguageKind::hproper, 12, {}}))
                got.insert(oracle::tokens_of(m.alphabet(), w));
            if (got != derive_all(g, 12)) o.fail("h-proper language differs from the grammar");
        } catch (const SynthesisFailed& e) {
            o.fail("synthesis failed: " + (e.report().counterexamples.empty() ? "" : e.report().counterexamples[0]));
        }
    }
    if (o.pass) o.note = "windows" + windows + ", h-proper languages equal up to 12";
    return o;
}

Check shrinking_transform() {
    Check o;
    SynthesisOptions opt;
    opt.window = 3;
    opt.max_window = 6;
    auto built = build_hrrwwc(make_anbn_gnf(), opt).automaton;
    for (const auto& src : {make_m_e_h(), built}) {
        auto s = to_shrinking(src);
        for (auto a : src.alphabet().input_symbols()) {
            auto hat = s.automaton.alphabet().at(src.alphabet().token(a) + "^");
            if (s.weights(a) != dga(src, a) + 1 || s.weights(hat) != 1) o.fail("weights are not dga + 1");
        }
        for (const auto& r : validate_shrinking(src, s, 10, 8, 8))
            if (r.verdict != Verdict::holds) o.fail(src.name() + ": " + r.property + " " + to_string(r.verdict));
    }
    if (o.pass) o.note = "m_e_h and built anbn: languages to 10, shrinking and correspondence to 8";
    return o;
}

Check window_hierarchy() {
    Check o;
    for (unsigned k = 2; k <= 4; ++k) {
        auto m = make_l_k(k);
        auto cmp = compare_with_oracle(
            m, LanguageKind::input, 20,
            token_oracle(m.alphabet(), [k](const auto& w) { return oracle::a_c_b(w, k - 1); },
                         [k](const auto& w) { return a_c_b_prefix(w, k - 1); }));
        if (!cmp.equal) o.fail("l_" + std::to_string(k) + " differs from its oracle");
        auto sweep = sweep_window_rewrites(k, 8);
        if (sweep.verdict != Verdict::holds) o.fail("sweep for k=" + std::to_string(k) + " found an exception");
    }
    if (o.pass) o.note = "l_2..l_4 equal to 20, sweeps for k=2..4 at n<=8 clean";
    return o;
}

Check multi_rewrite_hierarchy() {
    Check o;
    for (unsigned j = 1; j <= 3; ++j) {
        auto m = make_lm_j(j);
        auto cmp = compare_with_oracle(m, LanguageKind::input, 15,
                                       token_oracle(m.alphabet(), [j](const auto& w) { return oracle::copies(w, j); },
                                                    [j](const auto& w) { return copies_prefix(w, j); }));
        if (!cmp.equal) o.fail("lm_" + std::to_string(j) + " differs from its oracle");
        if (check_cycle_soundness(m, 10, {}, j + 1).verdict != Verdict::holds)
            o.fail("lm_" + std::to_string(j) + " unsound at mr=" + std::to_string(j + 1));
        if (check_cycle_soundness(m, 10, {}, j).verdict != Verdict::violated)
            o.fail("lm_" + std::to_string(j) + " sound at mr=" + std::to_string(j));
    }
    if (o.pass) o.note = "lm_1..lm_3 equal to 15, sound at j+1 and unsound at j";
    return o;
}

Check engine_cross_validation() {
    Check o;
    std::size_t words = 0;
    for (const auto& spec : catalog_automata()) {
        BasicDecider memo(spec, {}, true);
        BasicDecider plain(spec, {}, false);
        for (const auto& w : oracle::all_words(spec.alphabet().working_symbols(), 8)) {
            ++words;
            const auto a = memo.status(w), b = plain.status(w);
            if (a != b || a == Membership::resource_exceeded)
                o.fail(spec.name() + " disagrees on '" + spec.alphabet().render(w) + "'");
        }
    }
    if (o.pass) o.note = std::to_string(words) + " words agree";
    return o;
}

Check cli() {
    Check o;
    std::size_t n = 0;
    for (const auto& c : golden::cases()) {
        ++n;
        if (!golden::compare(c).empty()) o.fail("golden '" + c.name + "' differs");
    }
    for (const auto& e : catalog_list()) {
        if (e.automaton) {
            auto text = render_automaton(*e.automaton);
            auto back = parse_automaton(text);
            if (!(back == *e.automaton) || render_automaton(back) != text) o.fail(e.name + " round trip");
        } else {
            auto text = render_grammar(*e.grammar);
            if (!(parse_grammar(text) == *e.grammar)) o.fail(e.name + " round trip");
        }
    }
    if (o.pass) o.note = std::to_string(n) + " golden files, " + std::to_string(catalog_list().size()) + " round trips";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
        {"m_e fidelity", me_fidelity},
        {"preservation facts", facts_suite},
        {"monotonicity", monotonicity},
        {"GNF to h-RRWWC pipeline", pipeline},
        {"shrinking transform", shrinking_transform},
        {"window hierarchy evidence", window_hierarchy},
        {"multi-rewrite hierarchy evidence", multi_rewrite_hierarchy},
        {"engine cross-validation", engine_cross_validation},
        {"cli goldens and round trips", cli},
    };
    bool all = true;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = run();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && result.pass;
        std::cout << (result.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << result.note << " ("
                  << static_cast<int>(secs) << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
