#include "redukto/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace redukto {

namespace {

class TableBuilder {
public:
    explicit TableBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    StateId state(const std::string& name) {
        auto it = std::find(states_.begin(), states_.end(), name);
        if (it != states_.end()) return static_cast<StateId>(it - states_.begin());
        states_.push_back(name);
        return static_cast<StateId>(states_.size() - 1);
    }

    WindowContent window(std::string_view text) const {
        Word w;
        std::istringstream in{std::string(text)};
        for (std::string t; in >> t;) {
            if (t == kLeftSentinelToken)
                w.push_back(kLeftSentinel);
            else if (t == kRightSentinelToken)
                w.push_back(kRightSentinel);
            else
                w.push_back(alphabet_.at(t));
        }
        return WindowContent(w);
    }

    void on(const std::string& q, std::string_view u, Instruction instr) { table_.add(state(q), window(u), instr); }
    void on(const std::string& q, const WindowContent& u, Instruction instr) { table_.add(state(q), u, instr); }
    void otherwise(const std::string& q, Instruction instr) { table_.add_fallback(state(q), instr); }
    Instruction mvr(const std::string& q) { return Instruction::move_right(state(q)); }
    Instruction sl(const std::string& q, std::string_view v) { return Instruction::rewrite(state(q), window(v)); }
    Instruction sl(const std::string& q, const WindowContent& v) { return Instruction::rewrite(state(q), v); }

    const Alphabet& alphabet() const { return alphabet_; }

    AutomatonSpec build(std::string name, std::size_t k, ClassFlags flags,
                        std::optional<HMorphism> h = std::nullopt) {
        return AutomatonSpec(std::move(name), alphabet_, states_, state("q0"), k, flags, table_, std::move(h));
    }

private:
    Alphabet alphabet_;
    std::vector<std::string> states_{"q0"};
    TransitionTable table_;
};

Alphabet make_alphabet(std::initializer_list<const char*> input, std::initializer_list<const char*> aux = {}) {
    Alphabet a;
    for (auto t : input) a.add(t, SymbolRole::input);
    for (auto t : aux) a.add(t, SymbolRole::auxiliary);
    return a;
}

bool is_power_of_two_as(std::span<const SymbolId> w, SymbolId a) {
    if (w.empty()) return false;
    if (std::any_of(w.begin(), w.end(), [&](SymbolId s) { return s != a; })) return false;
    return (w.size() & (w.size() - 1)) == 0;
}

// Balanced-bracket oracle; `open` and `close` are the bracket ids.
LanguageOracle bracket_oracle(SymbolId open, SymbolId close, bool allow_empty) {
    auto depth_ok = [=](std::span<const SymbolId> w, bool require_closed) {
        long depth = 0;
        for (auto s : w) {
            if (s == open)
                ++depth;
            else if (s == close)
                --depth;
            else
                return false;
            if (depth < 0) return false;
        }
        return !require_closed || depth == 0;
    };
    return {[=](std::span<const SymbolId> w) { return depth_ok(w, true) && (allow_empty || !w.empty()); },
            [=](std::span<const SymbolId> w) { return depth_ok(w, false); }};
}

// a^n c^m b^n with fixed m (and n >= min_n).
LanguageOracle anchored_oracle(SymbolId a, SymbolId c, SymbolId b, std::size_t m, std::size_t min_n) {
    struct Shape {
        std::size_t as = 0, cs = 0, bs = 0;
        bool ok = true;
    };
    auto shape = [=](std::span<const SymbolId> w) {
        Shape s;
        int phase = 0;
        for (auto x : w) {
            if (x == a && phase == 0) {
                ++s.as;
            } else if (x == c && phase <= 1) {
                phase = 1;
                ++s.cs;
            } else if (x == b) {
                phase = 2;
                ++s.bs;
            } else {
                s.ok = false;
                break;
            }
        }
        return s;
    };
    return {[=](std::span<const SymbolId> w) {
                auto s = shape(w);
                return s.ok && s.cs == m && s.as == s.bs && s.as >= min_n;
            },
            [=](std::span<const SymbolId> w) {
                auto s = shape(w);
                if (!s.ok || s.cs > m) return false;
                if (s.bs > 0 && (s.cs != m || s.bs > s.as)) return false;
                return true;
            }};
}

// (u c)^j u with u over {a, b}.
LanguageOracle repeat_oracle(SymbolId c, unsigned j) {
    auto blocks = [=](std::span<const SymbolId> w) {
        std::vector<Word> out(1);
        for (auto s : w) {
            if (s == c)
                out.emplace_back();
            else
                out.back().push_back(s);
        }
        return out;
    };
    return {[=](std::span<const SymbolId> w) {
                auto b = blocks(w);
                if (b.size() != j + 1) return false;
                return std::all_of(b.begin(), b.end(), [&](const Word& x) { return x == b[0]; });
            },
            [=](std::span<const SymbolId> w) {
                auto b = blocks(w);
                if (b.size() > j + 1) return false;
                if (b.size() == 1) return true;
                for (std::size_t i = 1; i + 1 < b.size(); ++i)
                    if (b[i] != b[0]) return false;
                const auto& last = b.back();
                return last.size() <= b[0].size() && std::equal(last.begin(), last.end(), b[0].begin());
            }};
}

unsigned parse_suffix(std::string_view name, std::string_view prefix) {
    unsigned value = 0;
    auto rest = name.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
        throw PreconditionError("unknown catalog entry '" + std::string(name) + "'");
    return value;
}

}  // namespace

AutomatonSpec make_m_e() {
    TableBuilder t(make_alphabet({"a"}, {"b"}));
    t.on("q0", "^ a $", Instruction::accept());
    t.on("q0", "^ b $", Instruction::accept());
    t.on("q0", "^ a a", t.mvr("q0"));
    t.on("q0", "^ b b", t.mvr("q0"));
    t.on("q0", "a a a", t.mvr("q0"));
    t.on("q0", "b b b", t.mvr("q0"));
    t.on("q0", "a a $", t.sl("q1", "b $"));
    t.on("q0", "b b $", t.sl("q1", "a $"));
    t.on("q0", "a a b", t.sl("q1", "b b"));
    t.on("q0", "b b a", t.sl("q1", "a a"));
    t.on("q0", "^ a b", Instruction::reject());
    t.on("q0", "^ b a", Instruction::reject());
    t.otherwise("q1", Instruction::restart());
    ClassFlags flags{.direction = Direction::R, .form = RewriteForm::SL, .aux = AuxUse::WW, .deterministic = true};
    return t.build("m_e", 3, flags);
}

AutomatonSpec make_m_e_h() {
    auto m = make_m_e();
    auto h = HMorphism::identity_on_input(m.alphabet());
    h.set(m.alphabet().at("b"), m.alphabet().at("a"));
    return m.with_name("m_e_h").with_morphism(h);
}

AutomatonSpec make_dyck1() {
    TableBuilder t(make_alphabet({"a1", "A1"}));
    t.on("q0", "^ $", Instruction::accept());
    t.on("q0", "^ a1", t.mvr("q0"));
    t.on("q0", "a1 a1", t.mvr("q0"));
    t.on("q0", "a1 A1", t.sl("qr", ""));
    t.otherwise("q0", Instruction::reject());
    t.otherwise("qr", Instruction::restart());
    ClassFlags flags{.direction = Direction::R, .form = RewriteForm::CL, .aux = AuxUse::none, .deterministic = true};
    return t.build("dyck1", 2, flags);
}

AutomatonSpec make_l_k(unsigned k) {
    if (k < 1) throw PreconditionError("l_k needs k >= 1");
    if (k == 1) return make_dyck1().with_name("l_1");
    if (k + 1 > kMaxWindow) throw PreconditionError("l_k window exceeds the supported maximum");
    TableBuilder t(make_alphabet({"a", "b", "c"}));
    const auto& al = t.alphabet();
    const SymbolId a = al.at("a"), b = al.at("b"), c = al.at("c");
    const std::size_t window = k + 1;

    Word center{a};
    center.insert(center.end(), k - 1, c);
    center.push_back(b);
    const Word block(k - 1, c);

    Word accept_window{kLeftSentinel};
    accept_window.insert(accept_window.end(), block.begin(), block.end());
    accept_window.push_back(kRightSentinel);
    t.on("q0", WindowContent(accept_window), Instruction::accept());
    t.on("q0", WindowContent(center), t.sl("qr", WindowContent(block)));

    // Move right over every window whose symbols still read a*c*b*.
    auto sorted_shape = [&](const Word& w) {
        auto rank = [&](SymbolId s) { return s == a ? 0 : s == c ? 1 : 2; };
        return std::is_sorted(w.begin(), w.end(), [&](SymbolId x, SymbolId y) { return rank(x) < rank(y); });
    };
    const Word letters{a, b, c};
    for (bool left : {false, true}) {
        const std::size_t len = left ? window - 1 : window;
        for_each_word(letters, len, [&](const Word& w) {
            if (w.size() != len || !sorted_shape(w) || (!left && w == center)) return true;
            Word u;
            if (left) u.push_back(kLeftSentinel);
            u.insert(u.end(), w.begin(), w.end());
            t.on("q0", WindowContent(u), t.mvr("q0"));
            return true;
        });
    }
    t.otherwise("q0", Instruction::reject());
    t.otherwise("qr", Instruction::restart());
    ClassFlags flags{.direction = Direction::R, .form = RewriteForm::CL, .aux = AuxUse::none, .deterministic = true};
    return t.build("l_" + std::to_string(k), window, flags);
}

AutomatonSpec make_lm_j(unsigned j) {
    if (j < 1) throw PreconditionError("lm_j needs j >= 1");
    TableBuilder t(make_alphabet({"a", "b", "c"}));
    const std::vector<std::string> letters{"a", "b"};
    const unsigned mod = j + 1;
    auto d = [](const std::string& x, unsigned i, unsigned m) {
        return "d_" + x + "_" + std::to_string(i) + "_" + std::to_string(m);
    };
    auto e = [](const std::string& x, unsigned i, unsigned m) {
        return "e_" + x + "_" + std::to_string(i) + "_" + std::to_string(m);
    };
    auto f = [](const std::string& x, unsigned i, unsigned m) {
        return "f_" + x + "_" + std::to_string(i) + "_" + std::to_string(m);
    };
    // After a mismatch: c's seen (capped at j + 1) and letters seen mod j + 1.
    auto g = [](unsigned cs, unsigned m) { return "g_" + std::to_string(cs) + "_" + std::to_string(m); };

    // Last window y $ of a mismatching cycle: delete y exactly when the tape
    // would otherwise still have j c's and a letter count divisible by j + 1.
    auto finish = [&](const std::string& q, const std::string& y, unsigned cs, unsigned m) {
        const unsigned total_c = cs + (y == "c" ? 1 : 0);
        const unsigned total_m = (m + (y == "c" ? 0 : 1)) % mod;
        if (total_c == j && total_m == 0)
            t.on(q, y + " $", t.sl("r", "$"));
        else
            t.on(q, y + " $", Instruction::restart());
    };

    // Tail for c^j, and the first deletion.
    t.on("q0", "^ $", Instruction::reject());
    t.on("q0", "^ c", t.mvr("t_1"));
    for (unsigned i = 1; i < j; ++i) t.on("t_" + std::to_string(i), "c c", t.mvr("t_" + std::to_string(i + 1)));
    t.on("t_" + std::to_string(j), "c $", Instruction::accept());
    for (unsigned i = 1; i <= j; ++i) t.otherwise("t_" + std::to_string(i), Instruction::reject());
    for (const auto& x : letters) t.on("q0", "^ " + x, t.sl(d(x, 1, 0), "^"));
    t.otherwise("q0", Instruction::reject());

    for (const auto& x : letters) {
        for (unsigned i = 1; i <= j; ++i) {
            for (unsigned m = 0; m < mod; ++m) {
                const auto q = d(x, i, m);
                for (const auto& y : {"a", "b", "c"}) t.on(q, std::string("^ ") + y, t.mvr(q));
                t.on(q, "$", Instruction::restart());
                t.on(q, "^ $", Instruction::restart());
                for (const auto& y : letters) {
                    for (const auto& z : {"a", "b", "c"}) t.on(q, y + " " + z, t.mvr(d(x, i, (m + 1) % mod)));
                    t.on(q, y + " $", Instruction::restart());  // fewer than i c's
                }
                for (const auto& z : {"a", "b", "c"}) {
                    if (z == x)
                        t.on(q, "c " + x, t.sl(i == j ? std::string("r") : e(x, i, m), "c"));
                    else
                        t.on(q, std::string("c ") + z, t.mvr(g(i, m)));
                }
                finish(q, "c", i - 1, m);
                if (i < j) {
                    t.otherwise(e(x, i, m), t.mvr(f(x, i, m)));
                    t.otherwise(f(x, i, m), t.mvr(d(x, i + 1, m)));
                }
            }
        }
    }
    for (unsigned cs = 1; cs <= j + 1; ++cs) {
        for (unsigned m = 0; m < mod; ++m) {
            const auto q = g(cs, m);
            for (const auto& z : {"a", "b", "c"}) {
                for (const auto& y : letters) t.on(q, y + " " + z, t.mvr(g(cs, (m + 1) % mod)));
                t.on(q, std::string("c ") + z, t.mvr(g(std::min(cs + 1, j + 1), m)));
            }
            for (const auto& y : letters) finish(q, y, cs, m);
            finish(q, "c", cs, m);
        }
    }
    t.otherwise("r", Instruction::restart());
    ClassFlags flags{.direction = Direction::RR,
                     .form = RewriteForm::CL,
                     .aux = AuxUse::none,
                     .deterministic = true,
                     .mr_degree = j + 1};
    return t.build("lm_" + std::to_string(j), 2, flags);
}

AutomatonSpec make_reg_window1() {
    // a* b a*: delete the a's in front of the b one per cycle, then scan.
    TableBuilder t(make_alphabet({"a", "b"}));
    t.on("q0", "^", t.mvr("q0"));
    t.on("q0", "a", t.sl("qr", ""));
    t.on("q0", "b", t.mvr("q1"));
    t.on("q0", "$", Instruction::reject());
    t.on("q1", "a", t.mvr("q1"));
    t.on("q1", "b", Instruction::reject());
    t.on("q1", "$", Instruction::accept());
    t.otherwise("qr", Instruction::restart());
    ClassFlags flags{.direction = Direction::R, .form = RewriteForm::CL, .aux = AuxUse::none, .deterministic = true};
    return t.build("reg_window1", 1, flags);
}

GnfGrammar make_anbn_gnf() {
    GnfGrammar g;
    g.nonterminals = {"S", "B"};
    g.terminals = {"a", "b"};
    g.start = "S";
    g.rules = {{"S", "a", {"S", "B"}}, {"S", "a", {"B"}}, {"B", "b", {}}};
    return g;
}

GnfGrammar make_dyck_gnf() {
    // Nonempty balanced words; R derives a word with exactly one unmatched A1.
    GnfGrammar g;
    g.nonterminals = {"S", "R"};
    g.terminals = {"a1", "A1"};
    g.start = "S";
    g.rules = {{"S", "a1", {"R"}}, {"S", "a1", {"R", "S"}}, {"R", "A1", {}}, {"R", "a1", {"R", "R"}}};
    return g;
}

namespace {

CatalogEntry automaton_entry(AutomatonSpec spec, std::string description, LanguageOracle oracle, std::string tags,
                             std::size_t bound) {
    CatalogEntry e;
    e.name = spec.name();
    e.description = std::move(description);
    e.alphabet = spec.alphabet();
    e.automaton = std::move(spec);
    e.oracle = std::move(oracle);
    e.declared_tags = std::move(tags);
    e.test_bound = bound;
    return e;
}

CatalogEntry grammar_entry(std::string name, GnfGrammar g, std::string description, LanguageOracle oracle) {
    CatalogEntry e;
    e.name = std::move(name);
    e.description = std::move(description);
    for (const auto& t : g.terminals) e.alphabet.add(t, SymbolRole::input);
    e.grammar = std::move(g);
    e.oracle = std::move(oracle);
    e.declared_tags = "GNF grammar";
    return e;
}

CatalogEntry l_k_entry(unsigned k) {
    auto spec = make_l_k(k);
    const auto& al = spec.alphabet();
    if (k == 1)
        return automaton_entry(std::move(spec), "Dyck language D1, the window-2 member of the L_k family",
                               bracket_oracle(al.at("a1"), al.at("A1"), true), "det-mon-RC k=2", 12);
    return automaton_entry(std::move(spec), "a^n c^" + std::to_string(k - 1) + " b^n with window " + std::to_string(k + 1),
                           anchored_oracle(al.at("a"), al.at("c"), al.at("b"), k - 1, 0),
                           "det-mon-RC k=" + std::to_string(k + 1), 20);
}

CatalogEntry lm_j_entry(unsigned j) {
    auto spec = make_lm_j(j);
    auto c = spec.alphabet().at("c");
    return automaton_entry(std::move(spec), "(u c)^" + std::to_string(j) + " u over u in {a,b}*", repeat_oracle(c, j),
                           "det-mrRRC(" + std::to_string(j + 1) + ") k=2", 15);
}

}  // namespace

CatalogEntry catalog_get(std::string_view name, std::optional<unsigned> param) {
    if (name == "m_e" || name == "m_e_h") {
        auto spec = name == "m_e" ? make_m_e() : make_m_e_h();
        auto a = spec.alphabet().at("a");
        LanguageOracle oracle{[a](std::span<const SymbolId> w) { return is_power_of_two_as(w, a); },
                              [a](std::span<const SymbolId> w) {
                                  return std::all_of(w.begin(), w.end(), [a](SymbolId s) { return s == a; });
                              }};
        auto description = name == "m_e" ? "a^(2^n) by rewriting aa to b and bb to a from right to left"
                                         : "the same automaton with h(b) = a";
        return automaton_entry(std::move(spec), description, oracle, "det-RWW k=3 non-monotone", 16);
    }
    if (name == "dyck1") {
        auto spec = make_dyck1();
        const auto& al = spec.alphabet();
        auto oracle = bracket_oracle(al.at("a1"), al.at("A1"), true);
        return automaton_entry(std::move(spec), "Dyck language D1: deletes the first factor a1 A1", oracle,
                               "det-mon-RC k=2", 12);
    }
    if (name == "reg_window1") {
        auto spec = make_reg_window1();
        const SymbolId a = spec.alphabet().at("a"), b = spec.alphabet().at("b");
        LanguageOracle oracle{[=](std::span<const SymbolId> w) {
                                  return std::count(w.begin(), w.end(), b) == 1 &&
                                         std::count(w.begin(), w.end(), a) + 1 == static_cast<long>(w.size());
                              },
                              [=](std::span<const SymbolId> w) { return std::count(w.begin(), w.end(), b) <= 1; }};
        return automaton_entry(std::move(spec), "a* b a* with window 1", oracle, "det-mon-RC k=1", 12);
    }
    if (name == "anbn_gnf") {
        Alphabet al = make_alphabet({"a", "b"});
        auto oracle = anchored_oracle(al.at("a"), 0xFFFD, al.at("b"), 0, 1);
        return grammar_entry("anbn_gnf", make_anbn_gnf(), "a^n b^n, n >= 1", oracle);
    }
    if (name == "dyck_gnf") {
        Alphabet al = make_alphabet({"a1", "A1"});
        return grammar_entry("dyck_gnf", make_dyck_gnf(), "nonempty Dyck words",
                             bracket_oracle(al.at("a1"), al.at("A1"), false));
    }
    if (name == "l_k" || name == "lm_j") {
        if (!param) throw PreconditionError(std::string(name) + " needs a parameter");
        return name == "l_k" ? l_k_entry(*param) : lm_j_entry(*param);
    }
    if (name.starts_with("lm_")) return lm_j_entry(parse_suffix(name, "lm_"));
    if (name.starts_with("l_")) return l_k_entry(parse_suffix(name, "l_"));
    throw PreconditionError("unknown catalog entry '" + std::string(name) + "'");
}

std::vector<std::string> catalog_automaton_names() {
    return {"m_e", "m_e_h", "dyck1", "l_2", "l_3", "l_4", "lm_1", "lm_2", "lm_3", "reg_window1"};
}

std::vector<CatalogEntry> catalog_list() {
    std::vector<CatalogEntry> out;
    for (const auto& n : catalog_automaton_names()) out.push_back(catalog_get(n));
    out.push_back(catalog_get("anbn_gnf"));
    out.push_back(catalog_get("dyck_gnf"));
    return out;
}

}  // namespace redukto
