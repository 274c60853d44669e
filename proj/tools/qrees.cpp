#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

#include "qrees/cli.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw qrees::Error(qrees::ErrorCode::Parse, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-Rees algebra toolkit"};
    std::string command, file;
    std::string cap = "8";
    qrees::CommandOptions opt;
    app.add_option("command", command, "operation to run")->required()->check(CLI::IsMember(qrees::command_names()));
    app.add_option("file", file, "problem file, or - for stdin")->required();
    app.add_flag("--json", opt.json, "structured output");
    app.add_flag("--dot", opt.dot, "chart tree in DOT (resolve)");
    app.add_option("--nmax", opt.nmax, "largest power tried by semi-decisions");
    app.add_option("--cap", cap, "largest weight searched by nu and nubar");
    app.add_option("--max-steps", opt.max_steps, "blowups allowed along one path (resolve)");
    app.add_option("--point", opt.point, "comma separated coordinates (ord)");
    app.add_option("--var", opt.var, "hypersurface or projected variable (coeff, eliminate)");
    app.add_option("--center", opt.center, "comma separated center variables (blowup, transform)");
    app.add_option("--chart-var", opt.chart_var, "chart variable (blowup, transform)");
    app.add_option("--algebra", opt.algebra, "algebra name, default the first one");
    app.add_option("--other", opt.other, "second algebra (equiv)");
    app.add_option("--poly", opt.poly, "polynomial (nu, nubar, member)");
    app.add_option("--weight", opt.weight, "weight (member)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        opt.cap = qrees::parse_weight(cap);
        auto problem = qrees::parse_problem(read_input(file));
        auto result = qrees::run_command(command, problem, opt);
        std::cout << result.output;
        if (result.exit_code != 0) std::cerr << "error: NOT_TERMINATED: step budget exhausted\n";
        return result.exit_code;
    } catch (const qrees::Error& e) {
        std::cerr << "error: " << qrees::error_code_name(e.code()) << ": " << e.what() << "\n";
        return qrees::exit_code_for(e.code());
    }
}
