#include <doctest.h>

#include "oracles.hpp"
#include "redukto/catalog.hpp"
#include "redukto/languages.hpp"

#include <algorithm>

using namespace redukto;

namespace {

std::vector<Word> brute_language(const AutomatonSpec& spec, std::span<const SymbolId> letters, std::size_t n) {
    std::vector<Word> out;
    for (const auto& w : oracle::all_words(letters, n))
        if (*oracle::accepts(spec, w)) out.push_back(w);
    return out;
}

// v is in the h-proper language iff some letter-wise preimage is accepted.
bool brute_hproper(const AutomatonSpec& spec, const Word& v) {
    const auto& al = spec.alphabet();
    const auto& h = *spec.morphism();
    Word w(v.size());
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == v.size()) return *oracle::accepts(spec, w);
        for (auto d : al.working_symbols()) {
            if (h(d) != v[i]) continue;
            w[i] = d;
            if (go(i + 1)) return true;
        }
        return false;
    };
    return go(0);
}

LanguageOracle test_oracle(const Alphabet& al, std::function<bool(const oracle::Tokens&)> pred) {
    return {[al, pred](std::span<const SymbolId> w) { return pred(oracle::tokens_of(al, w)); }, {}};
}

}  // namespace

TEST_CASE("m_e input language holds exactly the powers of two") {
    auto m = make_m_e();
    auto words = enumerate_language(m, {LanguageKind::input, 20, {}});
    std::vector<std::size_t> lengths;
    for (const auto& w : words) lengths.push_back(w.size());
    CHECK(lengths == std::vector<std::size_t>{1, 2, 4, 8, 16});
}

TEST_CASE("input and basic enumerations match a brute-force filter") {
    for (const auto& e : catalog_list()) {
        if (!e.automaton) continue;
        const auto& spec = *e.automaton;
        CAPTURE(e.name);
        const auto& al = spec.alphabet();
        const std::size_t n = al.working_symbols().size() > 3 ? 5 : 7;
        CHECK(enumerate_language(spec, {LanguageKind::input, n, {}}) == brute_language(spec, al.input_symbols(), n));
        CHECK(enumerate_language(spec, {LanguageKind::basic, n, {}}) == brute_language(spec, al.working_symbols(), n));
    }
}

TEST_CASE("proper language is the projection of the basic one") {
    auto m = make_m_e();
    auto basic = enumerate_language(m, {LanguageKind::basic, 6, {}});
    std::vector<Word> projected;
    for (const auto& w : basic) projected.push_back(project(m.alphabet(), w));
    std::sort(projected.begin(), projected.end(), length_lex_less);
    projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
    CHECK(enumerate_language(m, {LanguageKind::proper, 6, {}}) == projected);
}

TEST_CASE("h-proper language of m_e_h is a^n for n >= 1") {
    auto m = make_m_e_h();
    auto words = enumerate_language(m, {LanguageKind::hproper, 9, {}});
    REQUIRE(words.size() == 9);
    for (std::size_t i = 0; i < words.size(); ++i) CHECK(words[i] == Word(i + 1, m.alphabet().at("a")));
    for (std::size_t n = 0; n <= 7; ++n) {
        Word v(n, m.alphabet().at("a"));
        CHECK((decide_hproper_membership(m, v).verdict == Membership::member) == brute_hproper(m, v));
    }
}

TEST_CASE("h-proper witnesses map back to the word") {
    auto m = make_m_e_h();
    const auto a = m.alphabet().at("a");
    for (std::size_t n = 1; n <= 12; ++n) {
        Word v(n, a);
        auto d = decide_hproper_membership(m, v);
        REQUIRE(d.verdict == Membership::member);
        CHECK(apply_morphism(*m.morphism(), d.witness) == v);
        CHECK(*oracle::accepts(m, d.witness));
        CHECK(replay_trace(m, d.trace).empty());
    }
}

TEST_CASE("h-proper decisions need input words") {
    auto m = make_m_e_h();
    HProperDecider d(m);
    CHECK(d.preimages(m.alphabet().at("a")) == std::vector<SymbolId>{m.alphabet().at("a"), m.alphabet().at("b")});
    CHECK_THROWS_AS(d.decide(Word{m.alphabet().at("b")}), PreconditionError);
}

TEST_CASE("dense tables agree with the decider and rank words bijectively") {
    for (const char* name : {"m_e", "dyck1", "l_2", "lm_1"}) {
        auto spec = *catalog_get(name).automaton;
        CAPTURE(name);
        auto table = tabulate_deterministic(spec, 6);
        BasicDecider d(spec);
        std::size_t r = 0;
        for (const auto& w : oracle::all_words(table.letters, 6)) {
            CHECK(table.rank(w) == r);
            CHECK(table.unrank(r) == w);
            CHECK((table.status[r] == 1) == (d.status(w) == Membership::member));
            ++r;
        }
        CHECK(r == table.status.size());
    }
}

TEST_CASE("dyck1 and l_2 differ first on the empty word") {
    auto c = compare_languages(make_dyck1(), {LanguageKind::input, 8, {}}, make_l_k(2), {LanguageKind::input, 8, {}});
    CHECK_FALSE(c.equal);
    REQUIRE(c.counterexample);
    CHECK(c.counterexample->empty());
    CHECK(c.in_first);
}

TEST_CASE("a language equals itself") {
    auto c = compare_languages(make_l_k(3), {LanguageKind::input, 10, {}}, make_l_k(3), {LanguageKind::input, 10, {}});
    CHECK(c.equal);
    CHECK_FALSE(c.counterexample);
}

TEST_CASE("catalog automata agree with closed-form oracles") {
    struct Case {
        const char* name;
        std::function<bool(const oracle::Tokens&)> pred;
        std::size_t n;
    };
    std::vector<Case> cases{
        {"m_e", oracle::power_of_two_as, 40},
        {"dyck1", [](const auto& w) { return oracle::balanced(w); }, 14},
        {"l_2", [](const auto& w) { return oracle::a_c_b(w, 1); }, 11},
        {"l_3", [](const auto& w) { return oracle::a_c_b(w, 2); }, 11},
        {"l_4", [](const auto& w) { return oracle::a_c_b(w, 3); }, 11},
        {"lm_1", [](const auto& w) { return oracle::copies(w, 1); }, 10},
        {"lm_2", [](const auto& w) { return oracle::copies(w, 2); }, 10},
        {"reg_window1", oracle::one_b, 14},
    };
    for (const auto& c : cases) {
        auto spec = *catalog_get(c.name).automaton;
        CAPTURE(c.name);
        auto cmp = compare_with_oracle(spec, LanguageKind::input, c.n, test_oracle(spec.alphabet(), c.pred));
        CHECK(cmp.equal);
        CHECK(cmp.words_checked > 0);
    }
}

TEST_CASE("oracle comparison reports the least differing word") {
    auto spec = make_l_k(2);
    // a c b is removed from the oracle, so it is the least mismatch
    auto cmp = compare_with_oracle(spec, LanguageKind::input, 8, test_oracle(spec.alphabet(), [](const auto& w) {
                                       return oracle::a_c_b(w, 1) && w.size() != 3;
                                   }));
    CHECK_FALSE(cmp.equal);
    REQUIRE(cmp.counterexample);
    CHECK(*cmp.counterexample == oracle::Tokens{"a", "c", "b"});
    CHECK(cmp.in_first);
}

TEST_CASE("walk_words visits in lexicographic pre-order and honours skips") {
    std::vector<SymbolId> letters{2, 3};
    std::vector<Word> seen;
    walk_words(letters, 2, [&](const Word& w) {
        seen.push_back(w);
        return w == Word{2} ? WalkStep::skip : WalkStep::descend;
    });
    CHECK(seen == std::vector<Word>{{}, {2}, {3}, {3, 2}, {3, 3}});
    seen.clear();
    walk_words(letters, 3, [&](const Word& w) {
        seen.push_back(w);
        return seen.size() == 3 ? WalkStep::stop : WalkStep::descend;
    });
    CHECK(seen.size() == 3);
}

TEST_CASE("oracle enumeration is sorted and complete") {
    auto spec = make_dyck1();
    auto o = test_oracle(spec.alphabet(), [](const auto& w) { return oracle::balanced(w); });
    auto words = enumerate_oracle(o, spec.alphabet().input_symbols(), 8);
    CHECK(std::is_sorted(words.begin(), words.end(), length_lex_less));
    // Catalan numbers 1, 1, 2, 5, 14
    CHECK(words.size() == 1 + 1 + 2 + 5 + 14);
}

TEST_CASE("word lists compare through their tokens") {
    Alphabet x, y;
    x.add("a", SymbolRole::input);
    x.add("b", SymbolRole::input);
    y.add("b", SymbolRole::input);
    y.add("a", SymbolRole::input);
    std::vector<Word> lx{{2}, {2, 3}};
    std::vector<Word> ly{{3}, {3, 2}};
    CHECK(compare_word_lists(x, lx, y, ly).equal);
    ly.push_back({2, 2});
    auto c = compare_word_lists(x, lx, y, ly);
    CHECK_FALSE(c.equal);
    CHECK(*c.counterexample == oracle::Tokens{"b", "b"});
    CHECK_FALSE(c.in_first);
}

TEST_CASE("language kinds parse from their names") {
    CHECK(parse_language_kind("hproper") == LanguageKind::hproper);
    CHECK(std::string(to_string(LanguageKind::basic)) == "basic");
    CHECK_THROWS_AS(parse_language_kind("other"), PreconditionError);
}

TEST_CASE("enumeration reports exhausted budgets") {
    EngineOptions o;
    o.limits.max_configs = 5;
    CHECK_THROWS_AS(enumerate_language(make_dyck1(), {LanguageKind::input, 8, o}), ResourceExceeded);
}
