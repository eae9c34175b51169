#include <doctest.h>

#include "oracles.hpp"
#include "redukto/catalog.hpp"
#include "redukto/constructions.hpp"
#include "redukto/engine.hpp"

#include <set>

using namespace redukto;

namespace {

Word word(const AutomatonSpec& spec, std::string_view text) { return spec.alphabet().parse_word(text); }

// Restart tapes reachable in one strict cycle, by naive search.
std::set<Word> naive_cycle_targets(const AutomatonSpec& spec, const Word& w) {
    std::set<Word> out;
    const std::size_t k = spec.window();
    Word tape{kLeftSentinel};
    tape.insert(tape.end(), w.begin(), w.end());
    tape.push_back(kRightSentinel);
    using Config = std::tuple<Word, StateId, std::size_t, unsigned>;
    std::set<Config> seen{{tape, spec.initial(), 0, 0}};
    std::vector<Config> todo{{tape, spec.initial(), 0, 0}};
    while (!todo.empty()) {
        auto [t, q, pos, rw] = todo.back();
        todo.pop_back();
        Word cells(t.begin() + static_cast<long>(pos), t.begin() + static_cast<long>(std::min(pos + k, t.size())));
        for (const auto& in : spec.instructions(q, WindowContent(cells))) {
            Config next;
            if (in.kind == InstructionKind::restart && rw > 0) out.insert(Word(t.begin() + 1, t.end() - 1));
            if (in.kind == InstructionKind::move_right && pos + 1 < t.size()) next = {t, in.next, pos + 1, rw};
            else if (in.kind == InstructionKind::move_left && pos > 0) next = {t, in.next, pos - 1, rw};
            else if (in.kind == InstructionKind::rewrite && rw < std::max(1u, spec.flags().mr_degree)) {
                Word n(t.begin(), t.begin() + static_cast<long>(pos));
                n.insert(n.end(), in.target.begin(), in.target.end());
                n.insert(n.end(), t.begin() + static_cast<long>(pos + cells.size()), t.end());
                const auto shift = cells.size() - in.target.size();
                next = {n, in.next, pos > shift ? pos - shift : 0, rw + 1};
            } else continue;
            if (seen.insert(next).second) todo.push_back(next);
        }
    }
    return out;
}

std::vector<AutomatonSpec> automata() {
    std::vector<AutomatonSpec> out;
    for (const auto& e : catalog_list())
        if (e.automaton) out.push_back(*e.automaton);
    out.push_back(to_shrinking(make_m_e_h()).automaton);
    return out;
}

AutomatonSpec two_letter_machine(TransitionTable t, unsigned mr = 1) {
    Alphabet al;
    al.add("a", SymbolRole::input);
    al.add("b", SymbolRole::input);
    ClassFlags f;
    f.mr_degree = mr;
    return AutomatonSpec("t", al, {"q0", "q1", "q2"}, 0, 2, f, std::move(t));
}

}  // namespace

TEST_CASE("m_e reduces aaaa through aab and bb to a") {
    auto m = make_m_e();
    auto trace = run_deterministic(m, word(m, "a a a a"));
    CHECK(trace.outcome == Outcome::accept);
    CHECK(trace.cycles() == 3);
    auto tapes = trace.restart_tapes();
    REQUIRE(tapes.size() == 4);
    CHECK(m.alphabet().render(tapes[1]) == "a a b");
    CHECK(m.alphabet().render(tapes[2]) == "b b");
    CHECK(m.alphabet().render(tapes[3]) == "a");
    CHECK(replay_trace(m, trace).empty());
}

TEST_CASE("m_e rejects aaa in the second cycle") {
    auto m = make_m_e();
    auto trace = run_deterministic(m, word(m, "a a a"));
    CHECK(trace.outcome == Outcome::reject);
    CHECK(trace.cycles() == 1);
    CHECK(replay_trace(m, trace).empty());
}

TEST_CASE("right distance counts cells through the right sentinel") {
    auto m = make_m_e();
    auto c = restarting_configuration(m, word(m, "a a a"));
    CHECK(right_distance(c) == 5);
    c.pos = 3;
    CHECK(right_distance(c) == 2);
}

TEST_CASE("successors follow the table in exploration order") {
    auto m = make_m_e();
    auto c = restarting_configuration(m, word(m, "a a"));
    auto next = successors(m, c);
    REQUIRE(next.size() == 1);
    CHECK(next[0].instruction.kind == InstructionKind::move_right);
    CHECK(next[0].config.pos == 1);
    next = successors(m, next[0].config);
    REQUIRE(next.size() == 1);
    CHECK(next[0].instruction.kind == InstructionKind::rewrite);
    CHECK(m.alphabet().render(next[0].config.contents()) == "b");
}

TEST_CASE("replay rejects a tampered trace") {
    auto m = make_m_e();
    auto trace = run_deterministic(m, word(m, "a a a a"));
    trace.steps[2].config.pos = 0;
    CHECK_FALSE(replay_trace(m, trace).empty());
}

TEST_CASE("basic membership agrees with a naive search") {
    for (const auto& spec : automata()) {
        CAPTURE(spec.name());
        const std::size_t n = spec.alphabet().working_symbols().size() > 3 ? 5 : 6;
        BasicDecider d(spec);
        for (const auto& w : oracle::all_words(spec.alphabet().working_symbols(), n)) {
            auto expected = oracle::accepts(spec, w);
            REQUIRE(expected);
            CAPTURE(spec.alphabet().render(w));
            CHECK((d.status(w) == Membership::member) == *expected);
        }
    }
}

TEST_CASE("memoized and plain searches agree") {
    for (const auto& spec : automata()) {
        CAPTURE(spec.name());
        BasicDecider memo(spec, {}, true);
        BasicDecider plain(spec, {}, false);
        for (const auto& w : oracle::all_words(spec.alphabet().working_symbols(), 5))
            CHECK(memo.status(w) == plain.status(w));
    }
}

TEST_CASE("accepting witnesses replay and end in Accept") {
    for (const auto& spec : automata()) {
        CAPTURE(spec.name());
        BasicDecider d(spec);
        std::size_t members = 0;
        for (const auto& w : oracle::all_words(spec.alphabet().working_symbols(), 5)) {
            auto dec = d.decide(w);
            if (dec.verdict != Membership::member) continue;
            ++members;
            CHECK(replay_trace(spec, dec.witness).empty());
            CHECK(dec.witness.outcome == Outcome::accept);
            CHECK(dec.witness.steps.back().instruction.kind == InstructionKind::accept);
            CHECK(dec.witness.steps.front().config.contents() == w);
        }
        CHECK(members > 0);
    }
}

TEST_CASE("deterministic runs agree with the decider") {
    for (const auto& spec : automata()) {
        if (!spec.is_deterministic()) continue;
        CAPTURE(spec.name());
        for (const auto& w : oracle::all_words(spec.alphabet().working_symbols(), 5)) {
            auto trace = run_deterministic(spec, w);
            CHECK((trace.outcome == Outcome::accept) == (decide_basic_membership(spec, w).verdict == Membership::member));
            CycleEnd end;
            Word walked = w;
            while ((end = deterministic_phase(spec, walked)) == CycleEnd::restart) {
            }
            CHECK((end == CycleEnd::accept) == (trace.outcome == Outcome::accept));
        }
    }
}

TEST_CASE("cycle rewrites equal naively enumerated restart tapes") {
    for (const auto& spec : automata()) {
        CAPTURE(spec.name());
        for (const auto& w : oracle::all_words(spec.alphabet().working_symbols(), 5)) {
            std::set<Word> got;
            for (const auto& r : cycle_rewrites(spec, w)) {
                CHECK(r.from == w);
                got.insert(r.to);
                Trace t;
                t.steps = r.witness;
                t.outcome = Outcome::reject;
                CHECK(replay_trace(spec, t).empty());
            }
            CHECK(got == naive_cycle_targets(spec, w));
        }
    }
}

TEST_CASE("a determined prefix fixes the status of every extension") {
    for (const char* name : {"dyck1", "l_2", "lm_1", "reg_window1", "m_e"}) {
        auto spec = *catalog_get(name).automaton;
        CAPTURE(name);
        BasicDecider d(spec);
        const auto& letters = spec.alphabet().working_symbols();
        for (const auto& p : oracle::all_words(letters, 3)) {
            if (!d.prefix_determined(p)) continue;
            const auto status = d.status(p);
            for (const auto& tail : oracle::all_words(letters, 2)) {
                Word w = p;
                w.insert(w.end(), tail.begin(), tail.end());
                CHECK(d.status(w) == status);
            }
        }
    }
}

TEST_CASE("input membership needs a word over the input alphabet") {
    auto m = make_m_e();
    CHECK_THROWS_AS(decide_input_membership(m, word(m, "b")), PreconditionError);
    CHECK(decide_basic_membership(m, word(m, "b")).verdict == Membership::member);
}

TEST_CASE("configuration budget is reported, not guessed") {
    auto m = make_m_e();
    EngineOptions o;
    o.limits.max_configs = 3;
    CHECK(decide_basic_membership(m, word(m, "a a a a a a a a"), o).verdict == Membership::resource_exceeded);
    o = {};
    o.limits.max_total_cycles = 1;
    CHECK(run_deterministic(m, word(m, "a a a a"), o).outcome == Outcome::limit_exceeded);
}

TEST_CASE("strict cycles count rewrites, permissive ones do not") {
    const SymbolId a = 2;
    TransitionTable t;
    t.add(0, {kLeftSentinel, a}, Instruction::move_right(0));
    t.add(0, {a, a}, Instruction::rewrite(1, {a}));
    t.add(1, {a, a}, Instruction::rewrite(2, {a}));
    t.add(1, {kLeftSentinel, a}, Instruction::move_right(1));
    t.add_fallback(2, Instruction::restart());
    t.add(0, {a, kRightSentinel}, Instruction::accept());
    auto m1 = two_letter_machine(t, 1);
    auto w = Word{a, a, a};
    CHECK(run_deterministic(m1, w).outcome == Outcome::invalid_cycle);
    auto m2 = two_letter_machine(t, 2);
    CHECK(run_deterministic(m2, w).outcome == Outcome::accept);
    EngineOptions loose;
    loose.discipline = CycleDiscipline::permissive;
    CHECK(run_deterministic(m1, w, loose).outcome == Outcome::accept);
}

TEST_CASE("a cycle without rewrite is invalid under the strict discipline") {
    TransitionTable t;
    t.add_fallback(0, Instruction::restart());
    auto m = two_letter_machine(t);
    CHECK(run_deterministic(m, Word{2}).outcome == Outcome::invalid_cycle);
}

TEST_CASE("moving back and forth forever is reported as divergence") {
    TransitionTable t;
    t.add(0, {kLeftSentinel, 2}, Instruction::move_right(1));
    t.add(1, {2, kRightSentinel}, Instruction::move_left(0));
    auto m = two_letter_machine(t);
    CHECK(run_deterministic(m, Word{2}).outcome == Outcome::diverges);
    CHECK(decide_basic_membership(m, Word{2}).verdict == Membership::non_member);
}

TEST_CASE("a missing transition halts as a stuck rejection") {
    TransitionTable t;
    auto m = two_letter_machine(t);
    auto trace = run_deterministic(m, Word{2, 3});
    CHECK(trace.outcome == Outcome::reject);
    CHECK(trace.stuck);
}
