#include "cli.hpp"

#include "redukto/catalog.hpp"
#include "redukto/classifiers.hpp"
#include "redukto/constructions.hpp"
#include "redukto/io.hpp"
#include "redukto/languages.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace redukto {

namespace {

// Raised for bad arguments; maps to kExitInvalid.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<std::string> read_file(const std::string& path) {
    if (!std::filesystem::is_regular_file(path)) return std::nullopt;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A file path, or else the name of a catalog entry.
AutomatonSpec load_automaton(const std::string& arg) {
    if (auto text = read_file(arg)) return parse_automaton(*text);
    auto entry = catalog_get(arg);
    if (!entry.automaton) throw InvalidInput("'" + arg + "' is a grammar, not an automaton");
    return *entry.automaton;
}

GnfGrammar load_grammar(const std::string& arg) {
    if (auto text = read_file(arg)) return parse_grammar(*text);
    auto entry = catalog_get(arg);
    if (!entry.grammar) throw InvalidInput("'" + arg + "' is an automaton, not a grammar");
    return *entry.grammar;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw InvalidInput("cannot write '" + path + "'");
    file << text;
}

Word word_over(const Alphabet& alphabet, const std::string& text, bool input_only) {
    Word w = parse_word_arg(alphabet, text);
    if (input_only)
        for (auto s : w)
            if (!alphabet.is_input(s)) throw PreconditionError("'" + alphabet.token(s) + "' is not an input symbol");
    return w;
}

int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::holds: return kExitOk;
        case Verdict::violated: return kExitNo;
        case Verdict::resource_exceeded: return kExitResource;
    }
    return kExitResource;
}

int membership_code(Membership m) {
    switch (m) {
        case Membership::member: return kExitOk;
        case Membership::non_member: return kExitNo;
        case Membership::resource_exceeded: return kExitResource;
    }
    return kExitResource;
}

std::string reductions(const AutomatonSpec& spec, const Trace& trace) {
    std::string line;
    for (const auto& w : trace.restart_tapes()) line += (line.empty() ? "" : " => ") + render_word(spec.alphabet(), w);
    return line;
}

struct Settings {
    std::string limits;
};

EngineOptions engine_options(const Settings& s) {
    EngineOptions options;
    if (const char* env = std::getenv("REDUKTO_LIMITS"); env && *env) options.limits = parse_limits(env, options.limits);
    if (!s.limits.empty()) options.limits = parse_limits(s.limits, options.limits);
    return options;
}

struct RunArgs {
    std::string file, word;
    bool trace = false;
};

int cmd_run(const RunArgs& a, const Settings& s, std::ostream& out) {
    auto spec = load_automaton(a.file);
    auto options = engine_options(s);
    Word w = word_over(spec.alphabet(), a.word, true);
    if (!spec.is_deterministic()) {
        out << "note nondeterministic automaton, deciding by search\n";
        auto d = decide_input_membership(spec, w, options);
        out << "result " << to_string(d.verdict) << "\n";
        if (d.verdict == Membership::member) {
            out << "reductions " << reductions(spec, d.witness) << "\n";
            if (a.trace) out << render_trace(spec, d.witness);
        }
        return membership_code(d.verdict);
    }
    auto trace = run_deterministic(spec, w, options);
    out << "result " << to_string(trace.outcome) << "\n";
    out << "cycles " << trace.cycles() << "\n";
    out << "reductions " << reductions(spec, trace) << "\n";
    if (!trace.note.empty()) out << "note " << trace.note << "\n";
    if (a.trace) out << render_trace(spec, trace);
    switch (trace.outcome) {
        case Outcome::accept: return kExitOk;
        case Outcome::reject:
        case Outcome::invalid_cycle: return kExitNo;
        default: return kExitResource;
    }
}

struct DecideArgs {
    std::string file, word, kind = "input";
    bool trace = false;
};

int cmd_decide(const DecideArgs& a, const Settings& s, std::ostream& out) {
    auto spec = load_automaton(a.file);
    auto options = engine_options(s);
    auto kind = parse_language_kind(a.kind);
    if (kind == LanguageKind::proper) throw InvalidInput("decide supports --kind input, basic or hproper");
    if (kind == LanguageKind::hproper) {
        if (!spec.morphism()) throw InvalidInput("automaton has no morphism");
        auto d = decide_hproper_membership(spec, word_over(spec.alphabet(), a.word, true), options);
        out << "result " << to_string(d.verdict) << "\n";
        if (d.verdict == Membership::member) {
            out << "witness " << render_word(spec.alphabet(), d.witness) << "\n";
            if (a.trace) out << render_trace(spec, d.trace);
        }
        return membership_code(d.verdict);
    }
    Word w = word_over(spec.alphabet(), a.word, kind == LanguageKind::input);
    auto d = kind == LanguageKind::input ? decide_input_membership(spec, w, options)
                                         : decide_basic_membership(spec, w, options);
    out << "result " << to_string(d.verdict) << "\n";
    if (d.verdict == Membership::member) {
        out << "reductions " << reductions(spec, d.witness) << "\n";
        if (a.trace) out << render_trace(spec, d.witness);
    }
    return membership_code(d.verdict);
}

struct CheckArgs {
    std::string file, what;
    std::size_t max_len = 8;
    unsigned mr = 0;
    bool cycle = false;
    std::string form;
};

int cmd_check(const CheckArgs& a, const Settings& s, std::ostream& out) {
    auto spec = load_automaton(a.file);
    auto options = engine_options(s);
    CheckReport report;
    if (a.what == "det") {
        report = check_determinism(spec);
    } else if (a.what == "forms") {
        std::optional<RewriteForm> form;
        if (a.form == "CL") form = RewriteForm::CL;
        else if (a.form == "DL") form = RewriteForm::DL;
        else if (a.form == "SL") form = RewriteForm::SL;
        else if (!a.form.empty()) throw InvalidInput("unknown rewrite form '" + a.form + "'");
        report = check_forms(spec, form);
    } else if (a.what == "mono") {
        report = check_monotone(spec, a.max_len, options);
    } else if (a.what == "cycle") {
        std::optional<unsigned> mr;
        if (a.mr > 0) mr = a.mr;
        report = check_cycle_soundness(spec, a.max_len, options, mr);
    } else if (a.what == "cpp" || a.what == "epp") {
        const bool correctness = a.what == "cpp";
        auto mode = a.cycle ? (correctness ? PreservationMode::cycle_correctness : PreservationMode::cycle_error)
                            : (correctness ? PreservationMode::complete_correctness : PreservationMode::complete_error);
        report = check_preservation(spec, a.max_len, mode, options);
    } else if (a.what == "shrink") {
        auto weights = spec.weights() ? *spec.weights() : WeightFunction::unit(spec.alphabet());
        report = check_shrinking(spec, weights, a.max_len, options);
    } else {
        throw InvalidInput("unknown check '" + a.what + "'");
    }
    out << render_report(spec, report);
    return verdict_code(report.verdict);
}

struct TransformArgs {
    std::string input, output;
    std::size_t window = 3, max_window = 0, train = 10, validate = 12;
};

int cmd_gnf2hrrwwc(const TransformArgs& a, const Settings& s, std::ostream& out) {
    auto g = load_grammar(a.input);
    SynthesisOptions options;
    options.window = a.window;
    options.max_window = a.max_window;
    options.train_length = a.train;
    options.validate_length = a.validate;
    options.engine = engine_options(s);
    auto alphabet = hrrwwc_alphabet(g);
    try {
        auto result = build_hrrwwc(g, options);
        out << render_synthesis(alphabet, result.report);
        out << "class " << class_name(classify_automaton(result.automaton)) << "\n";
        write_output(a.output, render_automaton(result.automaton), out);
        return kExitOk;
    } catch (const SynthesisFailed& e) {
        out << render_synthesis(alphabet, e.report());
        return kExitNo;
    }
}

int cmd_shrink(const TransformArgs& a, std::ostream& out) {
    auto spec = load_automaton(a.input);
    auto result = to_shrinking(spec);
    out << "shrinking " << result.automaton.name() << " states " << result.automaton.states().size() << " class "
        << class_name(classify_automaton(result.automaton)) << "\n";
    write_output(a.output, render_automaton(result.automaton), out);
    return kExitOk;
}

struct EnumArgs {
    std::string file, kind = "input";
    std::size_t max_len = 8;
};

int cmd_enum(const EnumArgs& a, const Settings& s, std::ostream& out) {
    auto spec = load_automaton(a.file);
    LanguageQuery q{parse_language_kind(a.kind), a.max_len, engine_options(s)};
    for (const auto& w : enumerate_language(spec, q)) out << render_word(spec.alphabet(), w) << "\n";
    return kExitOk;
}

struct CmpArgs {
    std::string first, second, kind = "input", kind2, oracle;
    std::size_t max_len = 8;
};

int cmd_cmp(const CmpArgs& a, const Settings& s, std::ostream& out) {
    auto spec = load_automaton(a.first);
    auto options = engine_options(s);
    LanguageQuery qa{parse_language_kind(a.kind), a.max_len, options};
    Comparison c;
    if (!a.oracle.empty()) {
        if (!a.second.empty()) throw InvalidInput("give either a second automaton or --oracle");
        auto entry = catalog_get(a.oracle);
        auto mine = enumerate_language(spec, qa);
        auto theirs = enumerate_oracle(entry.oracle, entry.alphabet.input_symbols(), a.max_len);
        c = compare_word_lists(spec.alphabet(), mine, entry.alphabet, theirs);
    } else {
        if (a.second.empty()) throw InvalidInput("cmp needs a second automaton or --oracle");
        auto other = load_automaton(a.second);
        LanguageQuery qb{parse_language_kind(a.kind2.empty() ? a.kind : a.kind2), a.max_len, options};
        c = compare_languages(spec, qa, other, qb);
    }
    if (c.equal) {
        out << "equal <= " << a.max_len << "\n";
        return kExitOk;
    }
    std::string word;
    for (const auto& t : *c.counterexample) word += (word.empty() ? "" : " ") + t;
    out << "counterexample " << (word.empty() ? "-" : word) << " only in " << (c.in_first ? "first" : "second") << "\n";
    return kExitNo;
}

int cmd_catalog(const std::string& show, std::ostream& out) {
    if (!show.empty()) {
        auto entry = catalog_get(show);
        out << (entry.automaton ? render_automaton(*entry.automaton) : render_grammar(*entry.grammar));
        return kExitOk;
    }
    for (const auto& e : catalog_list()) {
        out << e.name << "  " << (e.automaton ? "automaton" : "grammar");
        if (!e.declared_tags.empty()) out << "  " << e.declared_tags;
        out << "  " << e.description << "\n";
    }
    return kExitOk;
}

}  // namespace

int redukto_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"h-lexicalized restarting automata toolkit", "redukto"};
    app.require_subcommand(1);
    Settings settings;
    app.add_option("--limits", settings.limits, "steps,configs,cycles budget");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "run an automaton on an input word");
    run_cmd->add_option("file", run.file, "automaton file or catalog name")->required();
    run_cmd->add_option("word", run.word, "input word, '-' for the empty word")->required();
    run_cmd->add_flag("--trace", run.trace, "print every step");
    run_cmd->add_option("--limits", settings.limits, "steps,configs,cycles budget");

    DecideArgs decide;
    auto* decide_cmd = app.add_subcommand("decide", "decide membership in a language of the automaton");
    decide_cmd->add_option("file", decide.file)->required();
    decide_cmd->add_option("word", decide.word)->required();
    decide_cmd->add_option("--kind", decide.kind, "input, basic or hproper");
    decide_cmd->add_flag("--trace", decide.trace);
    decide_cmd->add_option("--limits", settings.limits);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "check a structural or semantic property");
    check_cmd->add_option("file", check.file)->required();
    check_cmd->add_option("--what", check.what, "det, mono, forms, cycle, cpp, epp or shrink")->required();
    check_cmd->add_option("--max-len", check.max_len);
    check_cmd->add_option("--mr", check.mr, "rewrite bound per cycle for --what cycle");
    check_cmd->add_flag("--cycle", check.cycle, "cycle-rewrite preservation instead of complete");
    check_cmd->add_option("--form", check.form, "required rewrite form for --what forms");
    check_cmd->add_option("--limits", settings.limits);

    TransformArgs transform;
    auto* transform_cmd = app.add_subcommand("transform", "build automata from grammars or other automata");
    transform_cmd->require_subcommand(1);
    auto* gnf_cmd = transform_cmd->add_subcommand("gnf2hrrwwc", "h-RRWWC automaton for a GNF grammar");
    gnf_cmd->add_option("grammar", transform.input)->required();
    gnf_cmd->add_option("--window", transform.window);
    gnf_cmd->add_option("--max-window", transform.max_window);
    gnf_cmd->add_option("--train", transform.train);
    gnf_cmd->add_option("--validate", transform.validate);
    gnf_cmd->add_option("-o,--output", transform.output);
    gnf_cmd->add_option("--limits", settings.limits);
    auto* shrink_cmd = transform_cmd->add_subcommand("shrink", "shrinking automaton with the same h-proper language");
    shrink_cmd->add_option("file", transform.input)->required();
    shrink_cmd->add_option("-o,--output", transform.output);

    EnumArgs enumerate;
    auto* enum_cmd = app.add_subcommand("enum", "list a language up to a length");
    enum_cmd->add_option("file", enumerate.file)->required();
    enum_cmd->add_option("--kind", enumerate.kind, "input, basic, proper or hproper");
    enum_cmd->add_option("--max-len", enumerate.max_len);
    enum_cmd->add_option("--limits", settings.limits);

    CmpArgs cmp;
    auto* cmp_cmd = app.add_subcommand("cmp", "compare two bounded languages");
    cmp_cmd->add_option("first", cmp.first)->required();
    cmp_cmd->add_option("second", cmp.second);
    cmp_cmd->add_option("--kind", cmp.kind);
    cmp_cmd->add_option("--kind2", cmp.kind2, "kind for the second automaton, default --kind");
    cmp_cmd->add_option("--oracle", cmp.oracle, "catalog entry whose oracle is the second language");
    cmp_cmd->add_option("--max-len", cmp.max_len);
    cmp_cmd->add_option("--limits", settings.limits);

    std::string show;
    auto* catalog_cmd = app.add_subcommand("catalog", "list built-in automata and grammars");
    catalog_cmd->add_option("--show", show, "print the file of one entry");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalid;
    }

    try {
        if (*run_cmd) return cmd_run(run, settings, out);
        if (*decide_cmd) return cmd_decide(decide, settings, out);
        if (*check_cmd) return cmd_check(check, settings, out);
        if (*gnf_cmd) return cmd_gnf2hrrwwc(transform, settings, out);
        if (*shrink_cmd) return cmd_shrink(transform, out);
        if (*enum_cmd) return cmd_enum(enumerate, settings, out);
        if (*cmp_cmd) return cmd_cmp(cmp, settings, out);
        if (*catalog_cmd) return cmd_catalog(show, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ResourceExceeded& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const PreconditionError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace redukto
