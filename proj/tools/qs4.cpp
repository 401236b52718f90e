// Command-line front end: compute character components, run verification
// suites, normalize expressions, and emit representation residual tables.
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include <qsphere/chain.hpp>
#include <qsphere/parse.hpp>
#include <qsphere/verify.hpp>

namespace {

using namespace qsphere;

std::complex<double> parse_complex_flag(const std::string &s)
{
    size_t comma = s.find(',');
    try {
        if (comma == std::string::npos)
            return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception &) {
        throw CLI::ValidationError("expected RE or RE,IM, got '" + s + "'");
    }
}

int emit(const std::string &body, const std::string &out_path)
{
    if (out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return 2;
    }
    f << body;
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact symbolic engine for the quantum 4-sphere idempotent"};
    app.require_subcommand(1);

    std::string q_mode = "symbolic", q_flag = "0.5,0", format = "json", out_path;
    std::string zeta_flag = "0.7,0.1", sign_flag = "+", expr, target;
    int n = 1, dim = 32;
    unsigned hw = std::thread::hardware_concurrency();
    int workers = hw ? static_cast<int>(hw) : 1;

    CLI::App *chern_cmd = app.add_subcommand("chern", "compute a character component");
    chern_cmd->add_option("--n", n, "component index (0, 1 or 2)");
    chern_cmd->add_option("--q-mode", q_mode, "symbolic, unit-circle or numeric")
        ->check(CLI::IsMember({"symbolic", "unit-circle", "numeric"}));
    chern_cmd->add_option("--q", q_flag, "numeric q as RE,IM");
    chern_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    chern_cmd->add_option("--out", out_path, "write output to a file");
    chern_cmd->add_option("--workers", workers, "contraction worker count");

    CLI::App *verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("target", target, "idempotent, selfadjoint, prop1, prop2, cycle, "
                                             "rep, characters or isomorphism")
        ->required()
        ->check(CLI::IsMember({"idempotent", "selfadjoint", "prop1", "prop2", "cycle", "rep",
                               "characters", "isomorphism"}));
    verify_cmd->add_option("--zeta", zeta_flag, "rep point as RE,IM");
    verify_cmd->add_option("--sign", sign_flag, "rep sign")->check(CLI::IsMember({"+", "-"}));
    verify_cmd->add_option("--q", q_flag, "numeric q as RE,IM");
    verify_cmd->add_option("--dim", dim, "rep truncation dimension");
    verify_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    verify_cmd->add_option("--out", out_path, "write output to a file");
    verify_cmd->add_option("--workers", workers, "contraction worker count");
    bool grid = false;
    verify_cmd->add_flag("--grid", grid, "for target rep: sweep the builtin parameter grid");

    CLI::App *normalize_cmd = app.add_subcommand("normalize", "print the normal form");
    normalize_cmd->add_option("expr", expr, "algebra expression")->required();
    normalize_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    normalize_cmd->add_option("--out", out_path, "write output to a file");

    CLI::App *rep_cmd = app.add_subcommand("rep", "emit a representation residual table");
    rep_cmd->add_option("--zeta", zeta_flag, "rep point as RE,IM");
    rep_cmd->add_option("--sign", sign_flag, "rep sign")->check(CLI::IsMember({"+", "-"}));
    rep_cmd->add_option("--q", q_flag, "numeric q as RE,IM");
    rep_cmd->add_option("--dim", dim, "truncation dimension");
    rep_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    rep_cmd->add_option("--out", out_path, "write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (workers < 1)
            workers = 1;
        if (chern_cmd->parsed()) {
            if (n < 0 || n > 2) {
                std::cerr << "error: --n must be 0, 1 or 2\n";
                return 2;
            }
            Chain c = chern(n, workers);
            std::string body;
            if (q_mode == "symbolic")
                body = format == "json" ? c.json() : c.str();
            else if (q_mode == "unit-circle") {
                auto s = specialize_unit_circle(c);
                body = format == "json" ? s.json() : s.str();
            } else {
                std::complex<double> q0 = parse_complex_flag(q_flag);
                if (q0 == std::complex<double>(0.0, 0.0)) {
                    std::cerr << "error: numeric mode requires q != 0\n";
                    return 2;
                }
                auto s = specialize_numeric(c, q0);
                body = format == "json" ? s.json() : s.str();
            }
            return emit(body, out_path);
        }
        if (normalize_cmd->parsed()) {
            AlgebraElement x;
            try {
                x = parse_algebra(expr);
            } catch (const ParseError &e) {
                std::cerr << "parse error at position " << e.position() << ": " << e.what()
                          << "\n";
                return 2;
            }
            std::string body;
            if (format == "json")
                body = "{\"input\": \"" + expr + "\", \"normal_form\": \"" + x.str() + "\"}\n";
            else
                body = x.str() + "\n";
            return emit(body, out_path);
        }
        if (rep_cmd->parsed() || (verify_cmd->parsed() && target == "rep")) {
            std::complex<double> zeta = parse_complex_flag(zeta_flag);
            std::complex<double> q0 = parse_complex_flag(q_flag);
            RepSign sign = sign_flag == "-" ? RepSign::Minus : RepSign::Plus;
            VerifyReport r;
            if (verify_cmd->parsed() && grid)
                r = verify_rep_grid(dim);
            else
                r = verify_rep(zeta, sign, q0, dim);
            int rc = emit(format == "json" ? r.json() : r.text(), out_path);
            if (rc != 0)
                return rc;
            return verify_cmd->parsed() && !r.pass ? 1 : 0;
        }
        // verify targets other than rep
        VerifyReport r;
        if (target == "idempotent")
            r = verify_idempotent();
        else if (target == "selfadjoint")
            r = verify_selfadjoint();
        else if (target == "prop1")
            r = verify_prop1(workers);
        else if (target == "prop2")
            r = verify_prop2(workers);
        else if (target == "cycle")
            r = verify_cycle(workers);
        else if (target == "characters")
            r = verify_characters(parse_complex_flag(q_flag));
        else if (target == "isomorphism")
            r = verify_isomorphism();
        int rc = emit(format == "json" ? r.json() : r.text(), out_path);
        if (rc != 0)
            return rc;
        return r.pass ? 0 : 1;
    } catch (const CLI::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
