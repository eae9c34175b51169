#pragma once

// In-process golden-file runner for the command line. Each case stores
// "exit <code>" followed by stdout in golden/<name>.txt. Setting
// REDUKTO_UPDATE_GOLDEN=1 rewrites the files instead of comparing.

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace golden {

struct Case {
    std::string name;
    std::vector<std::string> args;
};

inline std::vector<Case> cases() {
    return {
        {"run_m_e_aaaa", {"run", "m_e", "aaaa", "--trace"}},
        {"run_m_e_aaa", {"run", "m_e", "aaa"}},
        {"decide_m_e_b_basic", {"decide", "m_e", "b", "--kind", "basic", "--trace"}},
        {"decide_m_e_a8", {"decide", "m_e", "aaaaaaaa"}},
        {"decide_m_e_h_hproper", {"decide", "m_e_h", "aaaaa", "--kind", "hproper"}},
        {"check_m_e_mono", {"check", "m_e", "--what", "mono", "--max-len", "8"}},
        {"check_m_e_det", {"check", "m_e", "--what", "det"}},
        {"check_m_e_forms_cl", {"check", "m_e", "--what", "forms", "--form", "CL"}},
        {"enum_m_e_input", {"enum", "m_e", "--kind", "input", "--max-len", "9"}},
        {"enum_m_e_basic", {"enum", "m_e", "--kind", "basic", "--max-len", "4"}},
        {"run_dyck1_accept", {"run", "dyck1", "a1 a1 A1 A1", "--trace"}},
        {"run_dyck1_reject", {"run", "dyck1", "a1A1A1"}},
        {"decide_dyck1", {"decide", "dyck1", "a1 A1 a1 A1", "--trace"}},
        {"check_dyck1_mono", {"check", "dyck1", "--what", "mono", "--max-len", "10"}},
        {"check_dyck1_forms", {"check", "dyck1", "--what", "forms", "--form", "CL"}},
        {"check_dyck1_cpp", {"check", "dyck1", "--what", "cpp", "--max-len", "6"}},
        {"check_dyck1_cycle", {"check", "dyck1", "--what", "cycle", "--max-len", "8"}},
        {"enum_dyck1", {"enum", "dyck1", "--max-len", "6"}},
        {"catalog", {"catalog"}},
        {"catalog_show_m_e", {"catalog", "--show", "m_e"}},
    };
}

inline std::string run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = redukto::redukto_main(args, out, err);
    return "exit " + std::to_string(code) + "\n" + out.str();
}

inline std::string path_of(const Case& c) { return std::string(REDUKTO_GOLDEN_DIR) + "/" + c.name + ".txt"; }

// Empty when the output matches the stored file.
inline std::string compare(const Case& c) {
    const auto actual = run(c.args);
    const char* update = std::getenv("REDUKTO_UPDATE_GOLDEN");
    if (update && std::string(update) == "1") {
        std::ofstream(path_of(c)) << actual;
        return {};
    }
    std::ifstream in(path_of(c));
    if (!in) return "missing golden file " + path_of(c);
    std::stringstream expected;
    expected << in.rdbuf();
    if (expected.str() == actual) return {};
    return "output of '" + c.name + "' differs:\n--- expected\n" + expected.str() + "--- actual\n" + actual;
}

}  // namespace golden
