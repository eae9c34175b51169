#include "redukto/languages.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace redukto {

const char* to_string(LanguageKind k) {
    switch (k) {
        case LanguageKind::input: return "input";
        case LanguageKind::basic: return "basic";
        case LanguageKind::proper: return "proper";
        case LanguageKind::hproper: return "hproper";
    }
    return "?";
}

LanguageKind parse_language_kind(std::string_view text) {
    if (text == "input") return LanguageKind::input;
    if (text == "basic") return LanguageKind::basic;
    if (text == "proper") return LanguageKind::proper;
    if (text == "hproper") return LanguageKind::hproper;
    throw PreconditionError("unknown language kind '" + std::string(text) + "'");
}

HProperDecider::HProperDecider(const AutomatonSpec& spec, EngineOptions options, bool memoize)
    : spec_(spec), basic_(spec, options, memoize) {
    if (!spec.morphism()) throw PreconditionError("automaton has no morphism h");
    const auto& h = *spec.morphism();
    const auto& alphabet = spec.alphabet();
    preimages_.assign(alphabet.size(), {});
    for (auto d : alphabet.working_symbols()) {
        if (!h.defined(d)) throw PreconditionError("h is not total on the working alphabet");
        preimages_.at(h(d)).push_back(d);
    }
}

bool HProperDecider::search(std::span<const SymbolId> v, Word& prefix, bool& exceeded) {
    const auto pos = prefix.size();
    if (pos == v.size()) {
        auto s = basic_.status(prefix);
        if (s == Membership::resource_exceeded) exceeded = true;
        return s == Membership::member;
    }
    for (auto d : preimages_[v[pos]]) {
        prefix.push_back(d);
        if (basic_.prefix_determined(prefix)) {
            auto s = basic_.status(prefix);
            if (s == Membership::member) {
                // Every extension behaves like the prefix.
                for (auto i = pos + 1; i < v.size(); ++i) prefix.push_back(preimages_[v[i]].front());
                return true;
            }
            if (s == Membership::resource_exceeded) exceeded = true;
        } else if (search(v, prefix, exceeded)) {
            return true;
        }
        prefix.pop_back();
    }
    return false;
}

Membership HProperDecider::status(std::span<const SymbolId> v) {
    for (auto a : v)
        if (a >= spec_.alphabet().size() || !spec_.alphabet().is_input(a))
            throw PreconditionError("h-proper queries take words over the input alphabet");
    Word prefix;
    bool exceeded = false;
    if (search(v, prefix, exceeded)) return Membership::member;
    return exceeded ? Membership::resource_exceeded : Membership::non_member;
}

HProperDecision HProperDecider::decide(std::span<const SymbolId> v) {
    for (auto a : v)
        if (a >= spec_.alphabet().size() || !spec_.alphabet().is_input(a))
            throw PreconditionError("h-proper queries take words over the input alphabet");
    HProperDecision d;
    Word prefix;
    bool exceeded = false;
    if (search(v, prefix, exceeded)) {
        d.verdict = Membership::member;
        d.witness = prefix;
        d.trace = basic_.decide(prefix).witness;
    } else {
        d.verdict = exceeded ? Membership::resource_exceeded : Membership::non_member;
    }
    return d;
}

HProperDecision decide_hproper_membership(const AutomatonSpec& spec, std::span<const SymbolId> v,
                                          const EngineOptions& options) {
    HProperDecider decider(spec, options);
    return decider.decide(v);
}

namespace {

WalkStep walk_from(std::span<const SymbolId> letters, std::size_t max_len, Word& w,
                   const std::function<WalkStep(const Word&)>& visit) {
    auto step = visit(w);
    if (step != WalkStep::descend || w.size() == max_len) return step == WalkStep::stop ? step : WalkStep::descend;
    for (auto a : letters) {
        w.push_back(a);
        auto r = walk_from(letters, max_len, w, visit);
        w.pop_back();
        if (r == WalkStep::stop) return r;
    }
    return WalkStep::descend;
}

void sort_unique(std::vector<Word>& words) {
    std::sort(words.begin(), words.end(), length_lex_less);
    words.erase(std::unique(words.begin(), words.end()), words.end());
}

std::vector<SymbolId> letters_for(const AutomatonSpec& spec, LanguageKind kind) {
    return kind == LanguageKind::input ? spec.alphabet().input_symbols() : spec.alphabet().working_symbols();
}

std::vector<Word> enumerate_members(const AutomatonSpec& spec, std::span<const SymbolId> letters, std::size_t max_len,
                                    const EngineOptions& options) {
    BasicDecider decider(spec, options);
    std::vector<Word> out;
    walk_words(letters, max_len, [&](const Word& w) {
        auto s = decider.status(w);
        if (s == Membership::resource_exceeded)
            throw ResourceExceeded("limits exceeded on " + spec.alphabet().render(w));
        if (s == Membership::member) out.push_back(w);
        if (s != Membership::member && decider.prefix_determined(w)) return WalkStep::skip;
        return WalkStep::descend;
    });
    sort_unique(out);
    return out;
}

}  // namespace

void walk_words(std::span<const SymbolId> letters, std::size_t max_len,
                const std::function<WalkStep(const Word&)>& visit) {
    Word w;
    walk_from(letters, max_len, w, visit);
}

std::vector<Word> enumerate_language(const AutomatonSpec& spec, const LanguageQuery& query) {
    switch (query.kind) {
        case LanguageKind::input:
        case LanguageKind::basic:
            return enumerate_members(spec, letters_for(spec, query.kind), query.max_len, query.options);
        case LanguageKind::proper: {
            auto basic = enumerate_members(spec, spec.alphabet().working_symbols(), query.max_len, query.options);
            std::vector<Word> out;
            for (const auto& w : basic) out.push_back(project(spec.alphabet(), w));
            sort_unique(out);
            return out;
        }
        case LanguageKind::hproper: {
            if (!spec.morphism()) throw PreconditionError("automaton has no morphism h");
            auto basic = enumerate_members(spec, spec.alphabet().working_symbols(), query.max_len, query.options);
            std::vector<Word> out;
            for (const auto& w : basic) out.push_back(apply_morphism(*spec.morphism(), w));
            sort_unique(out);
            return out;
        }
    }
    return {};
}

std::size_t DenseTable::rank(std::span<const SymbolId> w) const {
    std::size_t r = 0;
    for (auto s : w) {
        auto it = std::find(letters.begin(), letters.end(), s);
        r = r * letters.size() + static_cast<std::size_t>(it - letters.begin());
    }
    return offsets.at(w.size()) + r;
}

Word DenseTable::unrank(std::size_t r) const {
    std::size_t len = 0;
    while (len + 1 < offsets.size() && offsets[len + 1] <= r) ++len;
    r -= offsets[len];
    Word w(len);
    for (std::size_t i = len; i > 0; --i) {
        w[i - 1] = letters[r % letters.size()];
        r /= letters.size();
    }
    return w;
}

DenseTable tabulate_deterministic(const AutomatonSpec& spec, std::size_t max_len, const EngineOptions& options) {
    if (!spec.is_deterministic()) throw PreconditionError("dense tabulation needs a deterministic automaton");
    if (spec.flags().shrinking) throw PreconditionError("dense tabulation needs length-reducing cycles");
    DenseTable table;
    table.letters = spec.alphabet().working_symbols();
    table.max_len = max_len;
    const std::size_t base = table.letters.size();
    table.offsets.push_back(0);
    std::size_t count = 1;
    for (std::size_t len = 0; len <= max_len; ++len) {
        table.offsets.push_back(table.offsets.back() + count);
        if (len < max_len) count *= std::max<std::size_t>(base, 1);
        if (table.offsets.back() > (std::size_t{1} << 31)) throw ResourceExceeded("dense table too large");
    }
    table.status.assign(table.offsets.back(), 0);
    std::vector<std::size_t> digit(spec.alphabet().size(), 0);
    for (std::size_t i = 0; i < base; ++i) digit[table.letters[i]] = i;

    const unsigned threads = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
    for (std::size_t len = 0; len <= max_len; ++len) {
        const std::size_t first = table.offsets[len], last = table.offsets[len + 1];
        auto work = [&](std::size_t from, std::size_t to) {
            Word w(len), v;
            for (std::size_t r = from; r < to; ++r) {
                std::size_t x = r - first;
                for (std::size_t i = len; i > 0; --i) {
                    w[i - 1] = table.letters[x % base];
                    x /= base;
                }
                v = w;
                std::uint8_t result = 0;
                switch (deterministic_phase(spec, v, options)) {
                    case CycleEnd::accept: result = 1; break;
                    case CycleEnd::restart: {
                        std::size_t rv = 0;
                        for (auto s : v) rv = rv * base + digit[s];
                        result = table.status[table.offsets[v.size()] + rv];
                        break;
                    }
                    case CycleEnd::limit: result = 2; break;
                    default: result = 0; break;
                }
                table.status[r] = result;
            }
        };
        const std::size_t n = last - first;
        if (n < 4096 || threads == 1) {
            work(first, last);
            continue;
        }
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t from = first + t * chunk, to = std::min(last, from + chunk);
            if (from < to) pool.emplace_back(work, from, to);
        }
        for (auto& th : pool) th.join();
    }
    return table;
}

namespace {

using TokenWord = std::vector<std::string>;

bool token_less(const TokenWord& a, const TokenWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::vector<TokenWord> to_tokens(const Alphabet& alphabet, const std::vector<Word>& words) {
    std::vector<TokenWord> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        TokenWord t;
        for (auto s : w) t.push_back(alphabet.token(s));
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), token_less);
    return out;
}

}  // namespace

Comparison compare_word_lists(const Alphabet& alpha_a, const std::vector<Word>& a, const Alphabet& alpha_b,
                              const std::vector<Word>& b) {
    auto ta = to_tokens(alpha_a, a), tb = to_tokens(alpha_b, b);
    Comparison c;
    c.words_checked = ta.size() + tb.size();
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (j == tb.size() || (i < ta.size() && token_less(ta[i], tb[j]))) {
            c.equal = false;
            c.counterexample = ta[i];
            c.in_first = true;
            return c;
        }
        if (i == ta.size() || token_less(tb[j], ta[i])) {
            c.equal = false;
            c.counterexample = tb[j];
            c.in_first = false;
            return c;
        }
        ++i;
        ++j;
    }
    return c;
}

Comparison compare_languages(const AutomatonSpec& a, const LanguageQuery& qa, const AutomatonSpec& b,
                             const LanguageQuery& qb) {
    if (qa.max_len != qb.max_len) throw PreconditionError("compared languages need the same length bound");
    auto la = enumerate_language(a, qa);
    auto lb = enumerate_language(b, qb);
    return compare_word_lists(a.alphabet(), la, b.alphabet(), lb);
}

std::vector<Word> enumerate_oracle(const LanguageOracle& oracle, std::span<const SymbolId> letters,
                                   std::size_t max_len) {
    std::vector<Word> out;
    walk_words(letters, max_len, [&](const Word& w) {
        if (oracle.contains(w)) out.push_back(w);
        if (oracle.viable_prefix && !oracle.viable_prefix(w)) return WalkStep::skip;
        return WalkStep::descend;
    });
    sort_unique(out);
    return out;
}

Comparison compare_with_oracle(const AutomatonSpec& spec, LanguageKind kind, std::size_t max_len,
                               const LanguageOracle& oracle, const EngineOptions& options) {
    if (kind != LanguageKind::input && kind != LanguageKind::basic)
        throw PreconditionError("oracle comparison covers input and basic languages");
    const auto letters = letters_for(spec, kind);
    Comparison c;
    auto record = [&](const Word& w, bool automaton_says) {
        if (c.counterexample) {
            TokenWord t;
            for (auto s : w) t.push_back(spec.alphabet().token(s));
            if (!token_less(t, *c.counterexample)) return;
        }
        c.equal = false;
        TokenWord t;
        for (auto s : w) t.push_back(spec.alphabet().token(s));
        c.counterexample = std::move(t);
        c.in_first = automaton_says;
    };

    double space = 0;
    for (std::size_t len = 0, p = 1; len <= max_len; ++len, p *= std::max<std::size_t>(letters.size(), 1)) {
        space += static_cast<double>(p);
        if (space > 1e12) break;
    }
    const bool dense = spec.is_deterministic() && !spec.flags().shrinking &&
                       letters.size() == spec.alphabet().working_symbols().size() && space <= double(1 << 25) &&
                       space > 4096;
    if (dense) {
        auto table = tabulate_deterministic(spec, max_len, options);
        std::vector<Word> members;
        for (std::size_t r = 0; r < table.status.size(); ++r) {
            if (table.status[r] == 2) throw ResourceExceeded("limits exceeded during tabulation");
            if (table.status[r] == 1) members.push_back(table.unrank(r));
        }
        if (oracle.viable_prefix) {
            auto expected = enumerate_oracle(oracle, letters, max_len);
            auto diff = compare_word_lists(spec.alphabet(), members, spec.alphabet(), expected);
            diff.words_checked = table.status.size();
            return diff;
        }
        Word w;
        for (std::size_t r = 0; r < table.status.size(); ++r) {
            ++c.words_checked;
            w = table.unrank(r);
            const bool a = table.status[r] == 1;
            if (a != oracle.contains(w)) {
                record(w, a);
                break;  // ranks are in length-lex order
            }
        }
        return c;
    }
    BasicDecider decider(spec, options);
    walk_words(letters, max_len, [&](const Word& w) {
        ++c.words_checked;
        auto s = decider.status(w);
        if (s == Membership::resource_exceeded)
            throw ResourceExceeded("limits exceeded on " + spec.alphabet().render(w));
        const bool a = s == Membership::member;
        if (a != oracle.contains(w)) record(w, a);
        if (!a && oracle.viable_prefix && !oracle.viable_prefix(w) && decider.prefix_determined(w))
            return WalkStep::skip;
        return WalkStep::descend;
    });
    return c;
}

}  // namespace redukto
