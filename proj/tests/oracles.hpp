#pragma once

// Test-side reference implementations. They work on token strings and a
// naive configuration search so that they share no code with the engine
// beyond the transition lookup of the model.

#include "redukto/model.hpp"

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

inline Tokens tokens_of(const redukto::Alphabet& al, std::span<const redukto::SymbolId> w) {
    Tokens out;
    for (auto s : w) out.push_back(al.token(s));
    return out;
}

inline std::size_t count_run(const Tokens& w, std::size_t from, const std::string& t) {
    std::size_t n = 0;
    while (from + n < w.size() && w[from + n] == t) ++n;
    return n;
}

// a^(2^n), n >= 0
inline bool power_of_two_as(const Tokens& w) {
    if (w.empty() || count_run(w, 0, "a") != w.size()) return false;
    return (w.size() & (w.size() - 1)) == 0;
}

inline bool balanced(const Tokens& w, const std::string& open = "a1", const std::string& close = "A1") {
    long depth = 0;
    for (const auto& t : w) {
        if (t == open) ++depth;
        else if (t == close) --depth;
        else return false;
        if (depth < 0) return false;
    }
    return depth == 0;
}

// a^n c^m b^n with m fixed
inline bool a_c_b(const Tokens& w, std::size_t m) {
    auto n = count_run(w, 0, "a");
    if (count_run(w, n, "c") != m) return false;
    return count_run(w, n + m, "b") == n && 2 * n + m == w.size();
}

// (u c)^j u with u over {a, b}
inline bool copies(const Tokens& w, unsigned j) {
    std::vector<Tokens> parts(1);
    for (const auto& t : w) {
        if (t == "c") parts.emplace_back();
        else if (t == "a" || t == "b") parts.back().push_back(t);
        else return false;
    }
    if (parts.size() != j + 1) return false;
    for (const auto& p : parts)
        if (p != parts.front()) return false;
    return true;
}

inline bool one_b(const Tokens& w) {
    std::size_t bs = 0;
    for (const auto& t : w) {
        if (t == "b") ++bs;
        else if (t != "a") return false;
    }
    return bs == 1;
}

inline bool anbn_positive(const Tokens& w) { return !w.empty() && a_c_b(w, 0); }

// Reachability of Accept over the restart graph, one plain breadth-first
// search per cycle. Strict cycles: 1..mr SL-steps before Restart, none in
// a tail. Returns nullopt when `budget` configurations do not suffice.
inline std::optional<bool> accepts(const redukto::AutomatonSpec& spec, std::span<const redukto::SymbolId> word,
                                   std::size_t budget = 200000) {
    using namespace redukto;
    const std::size_t k = spec.window();
    const unsigned mr = std::max(1u, spec.flags().mr_degree);
    std::set<Word> seen_tapes{Word(word.begin(), word.end())};
    std::deque<Word> tapes{Word(word.begin(), word.end())};
    while (!tapes.empty()) {
        Word start = tapes.front();
        tapes.pop_front();
        Word tape{kLeftSentinel};
        tape.insert(tape.end(), start.begin(), start.end());
        tape.push_back(kRightSentinel);
        using Config = std::tuple<Word, StateId, std::size_t, unsigned>;
        std::set<Config> seen{{tape, spec.initial(), 0, 0}};
        std::deque<Config> todo{{tape, spec.initial(), 0, 0}};
        while (!todo.empty()) {
            if (budget-- == 0) return std::nullopt;
            auto [t, q, pos, rw] = todo.front();
            todo.pop_front();
            Word cells(t.begin() + static_cast<long>(pos), t.begin() + static_cast<long>(std::min(pos + k, t.size())));
            for (const auto& in : spec.instructions(q, WindowContent(cells))) {
                switch (in.kind) {
                    case InstructionKind::accept:
                        if (rw == 0) return true;
                        break;
                    case InstructionKind::reject: break;
                    case InstructionKind::restart:
                        if (rw > 0) {
                            Word next(t.begin() + 1, t.end() - 1);
                            if (seen_tapes.insert(next).second) tapes.push_back(next);
                        }
                        break;
                    case InstructionKind::move_right:
                        if (pos + 1 < t.size() && seen.insert({t, in.next, pos + 1, rw}).second)
                            todo.push_back({t, in.next, pos + 1, rw});
                        break;
                    case InstructionKind::move_left:
                        if (pos > 0 && seen.insert({t, in.next, pos - 1, rw}).second)
                            todo.push_back({t, in.next, pos - 1, rw});
                        break;
                    case InstructionKind::rewrite: {
                        if (rw + 1 > mr) break;
                        Word n(t.begin(), t.begin() + static_cast<long>(pos));
                        n.insert(n.end(), in.target.begin(), in.target.end());
                        n.insert(n.end(), t.begin() + static_cast<long>(pos + cells.size()), t.end());
                        const std::size_t shift = cells.size() - in.target.size();
                        const std::size_t np = pos > shift ? pos - shift : 0;
                        if (seen.insert({n, in.next, np, rw + 1}).second) todo.push_back({n, in.next, np, rw + 1});
                        break;
                    }
                }
            }
        }
    }
    return false;
}

// Every word over `letters` up to max_len, shortest first.
inline std::vector<redukto::Word> all_words(std::span<const redukto::SymbolId> letters, std::size_t max_len) {
    std::vector<redukto::Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) continue;
        for (auto a : letters) {
            auto w = out[i];
            w.push_back(a);
            out.push_back(w);
        }
    }
    return out;
}

}  // namespace oracle
