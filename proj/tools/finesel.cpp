#include "finesel/verifier.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace finesel;

namespace {

#ifndef FINESEL_DATA_DIR
#define FINESEL_DATA_DIR "data"
#endif

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CurveSpec parse_curve(std::string const & arg, std::string const & curves_path)
{
    if (arg.find(',') == std::string::npos) {
        auto const curves = read_curves(curves_path);
        auto it = curves.find(arg);
        if (it == curves.end())
            throw UsageError("unknown curve label '" + arg + "' (not in " + curves_path + ")");
        return it->second;
    }
    CurveSpec s;
    std::stringstream ss(arg);
    std::string cell;
    int i = 0;
    while (std::getline(ss, cell, ',')) {
        if (i == 5 || s.a[i].set_str(cell, 10) != 0)
            throw UsageError("--curve expects a label or five integers a1,a2,a3,a4,a6");
        ++i;
    }
    if (i != 5)
        throw UsageError("--curve expects a label or five integers a1,a2,a3,a4,a6");
    return s;
}

Format parse_format(std::string const & f) { return f == "machine" ? Format::Machine : Format::Text; }

}  // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Heegner point and fine Selmer hypothesis verifier"};
    app.require_subcommand(1);

    std::string const data = FINESEL_DATA_DIR;
    Options opt;
    std::string curve, format = "text", curves_path = data + "/curves.csv", golden_path = data + "/table_golden.csv";
    i64 D = 0;
    long p = 0;

    auto * verify = app.add_subcommand("verify", "check one (E, D, p) triple");
    verify->add_option("--curve", curve, "label or a1,a2,a3,a4,a6")->required();
    verify->add_option("--disc", D, "fundamental discriminant D < -4")->required();
    verify->add_option("--prime", p, "prime p >= 5")->required();
    verify->add_option("--precision", opt.precision, "decimal digits for the Heegner point")
        ->check(CLI::Range(20, 320))
        ->capture_default_str();
    verify->add_option("--ell-max", opt.ell_max, "Frobenius sample bound")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--aux-bound", opt.aux_bound, "auxiliary prime bound for (b)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}))->capture_default_str();
    verify->add_option("--curves", curves_path, "curve file for label lookup")->capture_default_str();

    auto * table = app.add_subcommand("table", "verify every row of the golden table");
    table->add_option("--input", curves_path, "curves.csv")->capture_default_str();
    table->add_option("--golden", golden_path, "table_golden.csv")->capture_default_str();
    table->add_option("--precision", opt.precision)->check(CLI::Range(20, 320))->capture_default_str();
    table->add_option("--ell-max", opt.ell_max)->check(CLI::PositiveNumber)->capture_default_str();
    table->add_option("--aux-bound", opt.aux_bound)->check(CLI::PositiveNumber)->capture_default_str();
    table->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int const rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*verify) {
            CurveSpec spec;
            try {
                spec = parse_curve(curve, curves_path);
            } catch (std::runtime_error const & e) {
                throw UsageError(e.what());
            }
            auto const r = verify_row({spec, D, p, opt});
            std::cout << emit_report(r, parse_format(format));
            return exit_code({r});
        }
        TableResult t;
        try {
            t = run_table(read_curves(curves_path), read_golden(golden_path), opt);
        } catch (std::runtime_error const & e) {
            throw UsageError(e.what());
        }
        std::cout << emit_table(t, parse_format(format));
        for (auto const & m : t.mismatches)
            std::cerr << "golden mismatch: " << m << "\n";
        return exit_code(t.reports, !t.mismatches.empty());
    } catch (UsageError const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (std::invalid_argument const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
