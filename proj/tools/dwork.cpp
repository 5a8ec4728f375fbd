#include "dwork/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char **argv) {
    CLI::App app{"Picard-Fuchs operators from GKZ data and twisted de Rham cohomology"};
    std::string input;
    std::string format = "text";
    dwork::cli::Options opts;
    std::vector<unsigned> u;
    std::vector<unsigned> v;
    unsigned max_order = 0;
    unsigned x_degree = 0;
    unsigned y_degree = 0;
    unsigned mu_degree = 0;
    unsigned del_order = 0;

    app.add_option("--input", input, "problem spec file")->required()->check(CLI::ExistingFile);
    app.add_option("--command", opts.command, "command to run")
        ->required()
        ->check(CLI::IsMember({"gkz", "annihilator", "picard-fuchs", "verify"}));
    auto *ou = app.add_option("--u", u, "x exponents of the class")->delimiter(',');
    auto *ov = app.add_option("--v", v, "y exponents of the class")->delimiter(',');
    auto *omax = app.add_option("--max-order", max_order, "largest operator order searched");
    auto *ox = app.add_option("--x-degree", x_degree, "x-degree of the cohomology box");
    auto *oy = app.add_option("--y-degree", y_degree, "y-degree of the cohomology box");
    auto *omu = app.add_option("--mu-degree", mu_degree, "mu-degree bound of the star span");
    auto *odel = app.add_option("--del-order", del_order, "d-order bound of the star span");
    app.add_flag("--cross-check", opts.cross_check, "compare the cohomology and pullback routes");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--seed", opts.seed, "seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : dwork::cli::ParseFailure;
    }
    if (*ou) {
        opts.u = u;
    }
    if (*ov) {
        opts.v = v;
    }
    if (*omax) {
        opts.max_order = max_order;
    }
    if (*ox) {
        opts.x_degree = x_degree;
    }
    if (*oy) {
        opts.y_degree = y_degree;
    }
    if (*omu) {
        opts.mu_degree = mu_degree;
    }
    if (*odel) {
        opts.del_order = del_order;
    }

    std::ifstream in(input);
    std::stringstream buf;
    buf << in.rdbuf();
    dwork::cli::Result r = dwork::cli::run(buf.str(), opts);
    if (format == "machine") {
        std::cout << dwork::cli::machine_format(r);
    } else {
        std::cout << dwork::cli::text_format(r);
    }
    if (r.exit_code != 0 && r.document.contains("error")) {
        std::cerr << r.document["error"]["message"].get<std::string>() << "\n";
    }
    return r.exit_code;
}
