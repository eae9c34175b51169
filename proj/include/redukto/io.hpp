#pragma once

#include "redukto/classifiers.hpp"
#include "redukto/constructions.hpp"
#include "redukto/engine.hpp"
#include "redukto/grammar.hpp"
#include "redukto/model.hpp"

#include <stdexcept>
#include <string>

namespace redukto {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Canonical automaton file text. parse_automaton(render_automaton(s)) == s
/// whenever the alphabet lists input symbols before auxiliary ones.
std::string render_automaton(const AutomatonSpec& spec);
AutomatonSpec parse_automaton(std::string_view text);

std::string render_grammar(const GnfGrammar& g);
GnfGrammar parse_grammar(std::string_view text);

/// Tokens with "^" and "$" for the sentinels and "-" for the empty window.
std::string render_window(const Alphabet& alphabet, std::span<const SymbolId> w);
std::string render_instruction(const AutomatonSpec& spec, const Instruction& instr);

/// One line per step: state, pos, [window], instruction | tape.
std::string render_trace(const AutomatonSpec& spec, const Trace& trace);

std::string render_report(const AutomatonSpec& spec, const CheckReport& report);
std::string render_synthesis(const Alphabet& alphabet, const SynthesisReport& report);

/// Word argument: whitespace-separated tokens, "-" or "" for λ, or a run of
/// tokens without separators split greedily by longest match.
Word parse_word_arg(const Alphabet& alphabet, std::string_view text);

/// Word as printed by listings: tokens separated by spaces, "-" for λ.
std::string render_word(const Alphabet& alphabet, std::span<const SymbolId> w);

/// "steps,configs,cycles" with any field allowed to be empty.
Limits parse_limits(std::string_view text, Limits base = {});

}  // namespace redukto
