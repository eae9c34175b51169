#include <doctest.h>

#include "oracles.hpp"
#include "redukto/catalog.hpp"
#include "redukto/classifiers.hpp"
#include "redukto/constructions.hpp"
#include "redukto/languages.hpp"

#include <set>

using namespace redukto;

namespace {

// Terminal strings of g up to length n, by expanding leftmost derivations.
std::set<oracle::Tokens> derive_all(const GnfGrammar& g, std::size_t n) {
    std::set<oracle::Tokens> out;
    std::function<void(oracle::Tokens&, std::vector<std::string>&)> go = [&](oracle::Tokens& done,
                                                                             std::vector<std::string>& stack) {
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
            for (auto it = r.tail.rbegin(); it != r.tail.rend(); ++it) stack.push_back(*it);
            done.push_back(r.head);
            go(done, stack);
            done.pop_back();
            stack = saved;
        }
    };
    oracle::Tokens done;
    std::vector<std::string> stack{g.start};
    go(done, stack);
    return out;
}

SynthesisOptions quick(std::size_t window) {
    SynthesisOptions o;
    o.window = window;
    o.train_length = 8;
    o.validate_length = 10;
    return o;
}

const SynthesisResult& built_anbn() {
    static const SynthesisResult result = build_hrrwwc(make_anbn_gnf(), quick(3));
    return result;
}

}  // namespace

TEST_CASE("derivation encoding names one symbol per rule") {
    auto e = derivation_encode(make_anbn_gnf());
    CHECK(e.symbols == std::vector<std::string>{"(1,a)", "(2,a)", "(3,b)"});
    CHECK(e.image == std::vector<std::string>{"a", "a", "b"});
    REQUIRE(e.encoded.rules.size() == 3);
    CHECK(e.encoded.rules[0].head == "(1,a)");
    CHECK(e.encoded.rules[0].tail == e.source.rules[0].tail);
    CHECK(e.encoded.terminals == e.symbols);
}

TEST_CASE("derivation replay follows the encoded rules") {
    auto e = derivation_encode(make_anbn_gnf());
    CHECK(derivation_check(e.encoded, oracle::Tokens{"(1,a)", "(2,a)", "(3,b)", "(3,b)"}));
    CHECK(derivation_check(e.encoded, oracle::Tokens{"(2,a)", "(3,b)"}));
    CHECK_FALSE(derivation_check(e.encoded, oracle::Tokens{"(2,a)", "(3,b)", "(3,b)"}));
    CHECK_FALSE(derivation_check(e.encoded, oracle::Tokens{"(1,a)", "(3,b)"}));
    CHECK_FALSE(derivation_check(e.encoded, oracle::Tokens{}));
}

TEST_CASE("encoded words are exactly the derivations of the source") {
    for (auto g : {make_anbn_gnf(), make_dyck_gnf()}) {
        auto e = derivation_encode(g);
        std::set<oracle::Tokens> images;
        for (const auto& w : derive_all(e.encoded, 8)) {
            CHECK(derivation_check(e.encoded, w));
            oracle::Tokens img;
            for (const auto& t : w) {
                auto i = std::find(e.symbols.begin(), e.symbols.end(), t) - e.symbols.begin();
                img.push_back(e.image[static_cast<std::size_t>(i)]);
            }
            images.insert(img);
        }
        CHECK(images == derive_all(g, 8));
    }
}

TEST_CASE("grammar oracles agree with exhaustive derivation") {
    for (auto g : {make_anbn_gnf(), make_dyck_gnf()}) {
        Alphabet al;
        for (const auto& t : g.terminals) al.add(t, SymbolRole::input);
        auto o = grammar_oracle(g, al);
        auto derived = derive_all(g, 10);
        for (const auto& w : oracle::all_words(al.input_symbols(), 10)) {
            auto toks = oracle::tokens_of(al, w);
            CHECK(o.contains(w) == derived.contains(toks));
            bool viable = false;
            for (const auto& d : derived)
                if (d.size() >= toks.size() && std::equal(toks.begin(), toks.end(), d.begin())) viable = true;
            if (viable) CHECK(o.viable_prefix(w));
        }
    }
}

TEST_CASE("catalog grammars generate their closed-form languages") {
    for (const auto& w : derive_all(make_anbn_gnf(), 12)) CHECK(oracle::anbn_positive(w));
    CHECK(derive_all(make_anbn_gnf(), 12).size() == 6);
    for (const auto& w : derive_all(make_dyck_gnf(), 10)) {
        CHECK_FALSE(w.empty());
        CHECK(oracle::balanced(w));
    }
    // nonempty Dyck words of length <= 10: 1 + 2 + 5 + 14 + 42
    CHECK(derive_all(make_dyck_gnf(), 10).size() == 64);
}

TEST_CASE("the anbn construction yields a deterministic CL reducer") {
    const auto& result = built_anbn();
    const auto& m = result.automaton;
    CHECK(result.report.success);
    CHECK(result.report.window == 3);
    CHECK(m.is_deterministic());
    CHECK(check_forms(m, RewriteForm::CL).verdict == Verdict::holds);
    CHECK(check_monotone(m, 8).verdict == Verdict::holds);
    CHECK(enumerate_language(m, {LanguageKind::input, 10, {}}).empty());
    auto words = enumerate_language(m, {LanguageKind::hproper, 10, {}});
    REQUIRE(words.size() == 5);
    for (const auto& w : words) CHECK(oracle::anbn_positive(oracle::tokens_of(m.alphabet(), w)));
    auto d = decide_hproper_membership(m, m.alphabet().parse_word("a a b b"));
    REQUIRE(d.verdict == Membership::member);
    CHECK(m.alphabet().render(d.witness) == "(1,a) (2,a) (3,b) (3,b)");
}

TEST_CASE("the basic language of the construction is the set of encoded derivations") {
    auto g = make_anbn_gnf();
    const auto& m = built_anbn().automaton;
    auto e = derivation_encode(g);
    std::vector<SymbolId> letters;
    for (const auto& b : e.symbols) letters.push_back(m.alphabet().at(b));
    BasicDecider d(m);
    for (const auto& w : oracle::all_words(letters, 7))
        CHECK((d.status(w) == Membership::member) == derivation_check(e.encoded, oracle::tokens_of(m.alphabet(), w)));
}

TEST_CASE("window 2 is too small for anbn") {
    try {
        build_hrrwwc(make_anbn_gnf(), quick(2));
        FAIL("synthesis should fail");
    } catch (const SynthesisFailed& e) {
        CHECK_FALSE(e.report().success);
        CHECK_FALSE(e.report().counterexamples.empty());
        CHECK(e.report().attempts.size() == 1);
    }
}

TEST_CASE("synthesis widens the window up to the cap") {
    auto o = quick(2);
    o.max_window = 4;
    auto result = build_hrrwwc(make_anbn_gnf(), o);
    CHECK(result.report.window == 3);
    CHECK(result.report.attempts.size() == 2);
}

TEST_CASE("the dyck construction matches the bracket oracle") {
    auto result = build_hrrwwc(make_dyck_gnf(), quick(3));
    const auto& m = result.automaton;
    CHECK(m.is_deterministic());
    CHECK(check_forms(m, RewriteForm::CL).verdict == Verdict::holds);
    auto words = enumerate_language(m, {LanguageKind::hproper, 8, {}});
    std::set<oracle::Tokens> got;
    for (const auto& w : words) got.insert(oracle::tokens_of(m.alphabet(), w));
    CHECK(got == derive_all(make_dyck_gnf(), 8));
}

TEST_CASE("dga counts h-preimages") {
    auto m = make_m_e_h();
    CHECK(dga(m, m.alphabet().at("a")) == 2);
    const auto& built = built_anbn().automaton;
    CHECK(dga(built, built.alphabet().at("a")) == 3);
    CHECK(dga(built, built.alphabet().at("b")) == 2);
}

TEST_CASE("the shrinking transform hats the input and weighs by ambiguity") {
    auto src = make_m_e_h();
    auto s = to_shrinking(src);
    const auto& al = s.automaton.alphabet();
    CHECK(s.automaton.flags().shrinking);
    CHECK(al.find("a^"));
    CHECK_FALSE(al.is_input(al.at("a^")));
    CHECK((*s.automaton.morphism())(al.at("a^")) == al.at("a"));
    CHECK(s.weights(al.at("a")) == 3);
    CHECK(s.weights(al.at("a^")) == 1);
    CHECK(s.weights(al.at("b")) == 1);
    CHECK(al.render(hat_word(src, s.automaton, src.alphabet().parse_word("a b a"))) == "a^ b a^");
    CHECK_THROWS_AS(to_shrinking(make_m_e()), PreconditionError);
}

TEST_CASE("shrinking transforms keep the h-proper language") {
    auto src = make_m_e_h();
    for (const auto& r : validate_shrinking(src, to_shrinking(src), 9, 6, 6)) {
        CAPTURE(r.property);
        CHECK(r.verdict == Verdict::holds);
    }
    const auto& built = built_anbn().automaton;
    for (const auto& r : validate_shrinking(built, to_shrinking(built), 6, 5, 6)) {
        CAPTURE(r.property);
        CHECK(r.verdict == Verdict::holds);
    }
}

TEST_CASE("a wrong weight function is caught") {
    auto src = make_m_e_h();
    auto s = to_shrinking(src);
    s.weights.set(s.automaton.alphabet().at("a"), 1);
    auto reports = validate_shrinking(src, s, 4, 4, 4);
    REQUIRE(reports.size() == 3);
    CHECK(reports[1].verdict == Verdict::violated);
}
