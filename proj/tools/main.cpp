#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fanstate/cli.hpp"

namespace {

fanstate::Complex parse_complex(const std::string& text) {
    std::size_t used = 0;
    const double re = std::stod(text, &used);
    if (used == text.size()) return {re, 0.0};
    if (text[used] != ',') throw std::invalid_argument("expected re[,im], got '" + text + "'");
    std::size_t used_im = 0;
    const std::string imag_part = text.substr(used + 1);
    const double im = std::stod(imag_part, &used_im);
    if (used_im != imag_part.size())
        throw std::invalid_argument("expected re[,im], got '" + text + "'");
    return {re, im};
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count,
                                  const char* what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string field =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t used = 0;
        values.push_back(std::stod(field, &used));
        if (used != field.size())
            throw std::invalid_argument(std::string(what) + ": bad number '" + field + "'");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (values.size() != count)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(count) +
                                    " comma-separated numbers");
    return values;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = nullptr;

    explicit OutputTarget(const std::string& path) {
        if (path == "-") {
            stream = &std::cout;
            return;
        }
        file.open(path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
        stream = &file;
    }
};

}  // namespace

int main(int argc, char** argv) {
    using namespace fanstate;

    CLI::App app{"fanstate: conditional generation of fan-states of a cavity field"};
    app.require_subcommand(1);

    std::string alpha_str;
    std::string out_path = "-";
    std::string format_str;
    std::string basis_str = "minus";
    std::string bounds_str;
    std::string res_str = "201,201";
    std::string kind_str;
    std::string tau_order_str;
    int atoms = 2;
    int k = 1;
    bool verify_flag = false;
    double r_min = 0.0, r_max = 3.0;
    int r_steps = 121;
    std::uint64_t seed = 1;
    int cases = 100;

    CLI::App* gen = app.add_subcommand(
        "generate", "Run the fan schedule on |alpha> and emit the JSON run report");
    gen->add_option("--alpha", alpha_str, "initial coherent amplitude, re[,im]")->required();
    gen->add_option("--atoms", atoms, "number of atom passages (2..12)")
        ->required()
        ->check(CLI::Range(2, 12));
    gen->add_option("--basis", basis_str, "preparation/detection basis (minus|plus)")
        ->check(CLI::IsMember({"minus", "plus"}));
    gen->add_flag("--verify", verify_flag, "cross-run the truncated Fock oracle");
    gen->add_option("--format", format_str, "json (the run report is always JSON)")
        ->check(CLI::IsMember({"csv", "json"}));
    gen->add_option("--out", out_path, "output path or - for stdout");

    CLI::App* sweep = app.add_subcommand(
        "prob-sweep", "Emit probability curves (fig3: single atom vs tau; fig4: P1 vs r; "
                      "fig5: P_k vs r)");
    sweep->add_option("kind", kind_str, "fig3|fig4|fig5")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
    sweep->add_option("--r-min", r_min, "sweep start (fig4/fig5)");
    sweep->add_option("--r-max", r_max, "sweep end (fig4/fig5)");
    sweep->add_option("--r-steps", r_steps, "number of samples (tau samples for fig3)");
    sweep->add_option("--tau-order", tau_order_str,
                      "fig4 only: restrict to one interaction-time order")
        ->check(CLI::IsMember({"pi-first", "half-pi-first"}));
    sweep->add_option("--format", format_str, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out_path, "output path or - for stdout");

    CLI::App* qfunc = app.add_subcommand(
        "qfunc", "Sample the Husimi Q-function of the fan-state |alpha,2k>_F");
    qfunc->add_option("--alpha", alpha_str, "fan-state amplitude, re[,im]")->required();
    qfunc->add_option("--k", k, "fan index k >= 1")->check(CLI::PositiveNumber);
    qfunc->add_option("--bounds", bounds_str, "x0,x1,y0,y1 (default +-(|alpha|+3))");
    qfunc->add_option("--res", res_str, "nx,ny grid resolution (default 201,201)");
    qfunc->add_option("--format", format_str, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    qfunc->add_option("--out", out_path, "output path or - for stdout");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run the seeded engine/oracle property suite");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--cases", cases, "random cases per suite");
    verify->add_option("--out", out_path, "output path or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version keep 0; any usage problem is 2
    }

    try {
        OutputTarget target(out_path);
        std::ostream& out = *target.stream;

        if (gen->parsed()) {
            if (!format_str.empty() && format_str != "json")
                throw std::invalid_argument("generate emits a JSON report; use --format json");
            const DetectionOutcome basis =
                basis_str == "plus" ? DetectionOutcome::plus : DetectionOutcome::minus;
            const RunReport report =
                cmd_generate(parse_complex(alpha_str), atoms, basis, verify_flag);
            write_report(report, out);
            if (report.oracle_max_deviation && *report.oracle_max_deviation > 1e-6) {
                std::cerr << "engine/oracle deviation " << *report.oracle_max_deviation
                          << " exceeds 1e-6\n";
                return 3;
            }
            return 0;
        }

        if (sweep->parsed()) {
            SweepOptions options;
            options.kind = kind_str == "fig3"   ? SweepKind::single_atom_vs_tau
                           : kind_str == "fig4" ? SweepKind::p1_vs_r
                                                : SweepKind::pk_vs_r;
            options.r_min = r_min;
            options.r_max = r_max;
            options.steps = r_steps;
            if (!tau_order_str.empty())
                options.tau_order = tau_order_str == "pi-first" ? TauOrder::pi_first
                                                                : TauOrder::half_pi_first;
            options.format = format_str == "json" ? OutputFormat::json : OutputFormat::csv;
            cmd_prob_sweep(options, out);
            return 0;
        }

        if (qfunc->parsed()) {
            QfuncOptions options;
            options.alpha = parse_complex(alpha_str);
            options.k = k;
            if (!bounds_str.empty()) {
                const auto b = parse_doubles(bounds_str, 4, "--bounds");
                options.bounds = {{b[0], b[1], b[2], b[3]}};
            }
            const auto res = parse_doubles(res_str, 2, "--res");
            options.nx = static_cast<int>(res[0]);
            options.ny = static_cast<int>(res[1]);
            options.format = format_str == "json" ? OutputFormat::json : OutputFormat::csv;
            cmd_qfunc(options, out);
            return 0;
        }

        if (verify->parsed()) return cmd_verify(seed, cases, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
