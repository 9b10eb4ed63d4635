#ifndef RAMLIM_JOB_HPP
#define RAMLIM_JOB_HPP

#include <optional>
#include <string>
#include <vector>

#include "ramlim/factorization.hpp"
#include "ramlim/hpoly.hpp"
#include "ramlim/ramification.hpp"

namespace ramlim {

struct JobOptions {
    int order = 8;
    int order_cap = 64;
    int trials = 3;
    std::uint64_t seed = 1;
    std::string engine = "auto";   // auto | general | quasi | zeuthen | adapted
    bool verify = false;
    int equiv_depth = 1;           // verification depth for adapted equivalences
};

struct ZeuthenSplit {
    Factorization e_components;    // the E_j, each with multiplicity 1
    HPoly a;
};

// One job: a family, its declared factorization data, a linear system and
// options. Parsed from a single JSON document.
struct JobSpec {
    std::vector<HPoly> family;                  // F_0, F_1, ...
    std::optional<Factorization> factors;       // for general/quasi engines
    std::optional<ZeuthenSplit> zeuthen;        // for the zeuthen engine
    std::optional<RationalPoint> pencil_point;  // explicit pencil
    bool pencil_random = false;
    std::vector<std::vector<HPoly>> basis;      // explicit system, per-element
                                                // t-coefficient lists
    JobOptions options;
};

// Throws ParseError on malformed JSON or polynomial text.
JobSpec parse_job(const std::string& json_text);

// Exit-code contract: 0 ok, 1 parse, 2 hypothesis, 3 oracle mismatch,
// 4 inconclusive truncation.
struct CommandResult {
    int exit_code = 0;
    std::string human;   // human-readable report (stdout)
    std::string json;    // machine-readable report
};

CommandResult cmd_ramification(const JobSpec& job);
CommandResult cmd_limit(const JobSpec& job);
CommandResult cmd_dual_limit(const JobSpec& job);

// Separate input shape: {"d1": [g0,g1,g2], "d2": [g0,g1,g2], "curve": F}.
CommandResult cmd_equiv_check(const std::string& json_text);

} // namespace ramlim

#endif
