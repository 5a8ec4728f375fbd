#pragma once

#include "dwork/gkz.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dwork::cli {

enum ExitCode : int {
    Ok = 0,
    Failure = 1,
    ParseFailure = 2,
    Unstable = 3,
    CertificateFailure = 4,
};

struct ProblemSpec {
    std::string name;
    VarList x;
    VarList y;
    VarList params;
    std::vector<std::string> invertible;
    std::vector<std::string> f;
    std::vector<unsigned> u;
    std::vector<unsigned> v;
    std::string derivation;
    unsigned x_degree = 0;
    unsigned y_degree = 0;
    unsigned mu_degree = 2;
    unsigned del_order = 2;
    unsigned max_order = 4;
    unsigned koszul_degree = 6;
    unsigned certificate_grid = 1;
    unsigned smoothness_cap = 0;
    // "legendre", "circle" or empty
    std::string oracle;
    std::vector<double> oracle_points;
};

// key = value lines; '#' starts a comment; "f" may repeat, one equation per line.
ProblemSpec parse_spec(const std::string &text);
ProblemSpec load_spec(const std::string &path);

struct Options {
    std::string command;
    std::optional<std::vector<unsigned>> u;
    std::optional<std::vector<unsigned>> v;
    std::optional<unsigned> max_order;
    std::optional<unsigned> x_degree;
    std::optional<unsigned> y_degree;
    std::optional<unsigned> mu_degree;
    std::optional<unsigned> del_order;
    bool cross_check = false;
    unsigned seed = 0;
};

// Instantiated problem: twist data, configuration and class index.
struct Problem {
    ProblemSpec spec;
    TwistData twist;
    PointConfig config;
    ClassIndex idx;
};

Problem build_problem(ProblemSpec spec, const Options &opts);

struct Result {
    nlohmann::json document;
    std::vector<std::string> text;
    int exit_code = Ok;
};

Result cmd_gkz(const Problem &p, const Options &opts);
Result cmd_annihilator(const Problem &p, const Options &opts);
Result cmd_picard_fuchs(const Problem &p, const Options &opts);
Result cmd_verify(const Problem &p, const Options &opts);

// Dispatches on opts.command; errors become documents with the matching exit code.
Result run(const std::string &spec_text, const Options &opts);

std::string machine_format(const Result &r);
std::string text_format(const Result &r);

} // namespace dwork::cli
