#include "fanstate/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "fanstate/fock_oracle.hpp"
#include "fanstate/phase_space.hpp"

namespace fanstate {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string json_complex(Complex z) {
    return "{\"re\": " + format_double(z.real()) + ", \"im\": " + format_double(z.imag()) + "}";
}

const char* outcome_name(DetectionOutcome s) {
    return s == DetectionOutcome::minus ? "minus" : "plus";
}

void write_double_array(std::ostream& out, const std::vector<double>& values) {
    out << "[";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i ? ", " : "") << format_double(values[i]);
    out << "]";
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            out << (i ? "," : "") << table.columns[i];
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << format_double(row[i]);
            out << "\n";
        }
        return;
    }
    out << "{\n  \"columns\": [";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? ", " : "") << "\"" << table.columns[i] << "\"";
    out << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << "    ";
        write_double_array(out, table.rows[r]);
        out << (r + 1 < table.rows.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
}

}  // namespace

RunReport cmd_generate(Complex alpha, int atoms, DetectionOutcome basis, bool verify) {
    const std::vector<ProtocolStep> steps = fan_schedule(atoms, basis);
    const ProtocolRun run = run_protocol(alpha, steps);

    RunReport report;
    report.alpha = alpha;
    report.atoms = atoms;
    report.basis = basis;
    report.steps = steps;
    report.per_step_norm_sq = run.per_step_norm_sq;
    report.conditional_probs = run.conditional_probs;
    report.paper_probability = run.paper_probability;
    report.record_probability = run.record_probability;
    report.final_state = run.final_state.terms();
    report.target_k = 1 << (atoms - 2);
    report.fidelity_to_fan = fidelity(run.final_state, fan_state(alpha, report.target_k));

    if (verify) {
        const int dim = default_dim(std::abs(alpha));
        const auto [oracle_final, oracle_norms] = oracle_protocol(alpha, steps, dim);
        double deviation = 0.0;
        for (std::size_t i = 0; i < oracle_norms.size(); ++i)
            deviation = std::max(deviation,
                                 std::abs(oracle_norms[i] - run.per_step_norm_sq[i]));
        deviation = std::max(
            deviation, sup_distance(embed_superposition(run.final_state, dim), oracle_final));
        report.oracle_max_deviation = deviation;
    }
    return report;
}

void write_report(const RunReport& report, std::ostream& out) {
    out << "{\n";
    out << "  \"alpha\": " << json_complex(report.alpha) << ",\n";
    out << "  \"atoms\": " << report.atoms << ",\n";
    out << "  \"basis\": \"" << outcome_name(report.basis) << "\",\n";
    out << "  \"steps\": [\n";
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
        const ProtocolStep& s = report.steps[i];
        out << "    {\"xi\": " << json_complex(s.prep.xi())
            << ", \"eta\": " << json_complex(s.prep.eta())
            << ", \"tau\": " << format_double(s.tau) << ", \"outcome\": \""
            << outcome_name(s.outcome) << "\"}" << (i + 1 < report.steps.size() ? "," : "")
            << "\n";
    }
    out << "  ],\n";
    out << "  \"conditional_probs\": ";
    write_double_array(out, report.conditional_probs);
    out << ",\n";
    out << "  \"per_step_norm_sq\": ";
    write_double_array(out, report.per_step_norm_sq);
    out << ",\n";
    out << "  \"paper_probability\": " << format_double(report.paper_probability) << ",\n";
    out << "  \"record_probability\": " << format_double(report.record_probability) << ",\n";
    out << "  \"final_state\": [\n";
    for (std::size_t i = 0; i < report.final_state.size(); ++i) {
        const CoherentTerm& t = report.final_state[i];
        out << "    {\"coeff\": " << json_complex(t.coeff) << ", \"amp\": " << json_complex(t.amp)
            << "}" << (i + 1 < report.final_state.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    out << "  \"target_k\": " << report.target_k << ",\n";
    out << "  \"fidelity_to_fan_state\": " << format_double(report.fidelity_to_fan);
    if (report.oracle_max_deviation) {
        out << ",\n  \"oracle_max_deviation\": " << format_double(*report.oracle_max_deviation);
    }
    out << "\n}\n";
}

void cmd_prob_sweep(const SweepOptions& options, std::ostream& out) {
    if (options.steps < 2) throw std::invalid_argument("prob-sweep: need at least 2 samples");
    Table table;
    switch (options.kind) {
        case SweepKind::single_atom_vs_tau: {
            const double radii[] = {0.5, 1.0, 5.0};
            table.columns = {"tau",          "p_same_r0.5", "p_flip_r0.5", "p_same_r1.0",
                             "p_flip_r1.0",  "p_same_r5.0", "p_flip_r5.0"};
            const AtomPreparation prep = AtomPreparation::ground();
            for (int i = 0; i < options.steps; ++i) {
                const double tau = 2.0 * std::numbers::pi * i / (options.steps - 1);
                std::vector<double> row{tau};
                for (double r : radii) {
                    row.push_back(
                        single_atom_probability(prep, DetectionOutcome::minus, tau, r));
                    row.push_back(
                        single_atom_probability(prep, DetectionOutcome::plus, tau, r));
                }
                table.rows.push_back(std::move(row));
            }
            break;
        }
        case SweepKind::p1_vs_r: {
            if (!(options.r_min >= 0.0) || !(options.r_min < options.r_max))
                throw std::invalid_argument("prob-sweep: need 0 <= r-min < r-max");
            table.columns = {"r"};
            const bool pi_first =
                !options.tau_order || *options.tau_order == TauOrder::pi_first;
            const bool half_pi_first =
                !options.tau_order || *options.tau_order == TauOrder::half_pi_first;
            if (pi_first) table.columns.push_back("p1_pi_first");
            if (half_pi_first) table.columns.push_back("p1_half_pi_first");
            for (int i = 0; i < options.steps; ++i) {
                const double r =
                    options.r_min + (options.r_max - options.r_min) * i / (options.steps - 1);
                std::vector<double> row{r};
                if (pi_first) row.push_back(p1_closed_form(r, TauOrder::pi_first));
                if (half_pi_first) row.push_back(p1_closed_form(r, TauOrder::half_pi_first));
                table.rows.push_back(std::move(row));
            }
            break;
        }
        case SweepKind::pk_vs_r: {
            if (!(options.r_min >= 0.0) || !(options.r_min < options.r_max))
                throw std::invalid_argument("prob-sweep: need 0 <= r-min < r-max");
            table.columns = {"r", "p_k1", "p_k2", "p_k4", "p_k8"};
            for (int i = 0; i < options.steps; ++i) {
                const double r =
                    options.r_min + (options.r_max - options.r_min) * i / (options.steps - 1);
                std::vector<double> row{r};
                for (int atoms = 2; atoms <= 5; ++atoms)
                    row.push_back(pk_paper_formula(r, atoms));
                table.rows.push_back(std::move(row));
            }
            break;
        }
    }
    write_table(table, options.format, out);
}

void cmd_qfunc(const QfuncOptions& options, std::ostream& out) {
    if (options.k < 1) throw std::invalid_argument("qfunc: k must be >= 1");
    const CoherentSuperposition state = fan_state(options.alpha, options.k);
    double x0, x1, y0, y1;
    if (options.bounds) {
        x0 = (*options.bounds)[0];
        x1 = (*options.bounds)[1];
        y0 = (*options.bounds)[2];
        y1 = (*options.bounds)[3];
    } else {
        const double extent = std::abs(options.alpha) + 3.0;
        x0 = -extent;
        x1 = extent;
        y0 = -extent;
        y1 = extent;
    }
    const QGrid grid = q_grid(state, x0, x1, y0, y1, options.nx, options.ny);
    Table table;
    table.columns = {"x", "y", "Q"};
    table.rows.reserve(grid.values.size());
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy)
            table.rows.push_back({grid.x_center(ix), grid.y_center(iy), grid.value_at(ix, iy)});
    write_table(table, options.format, out);
}

}  // namespace fanstate
