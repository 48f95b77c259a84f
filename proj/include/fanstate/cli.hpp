#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fanstate/cavity_protocol.hpp"

namespace fanstate {

enum class OutputFormat { csv, json };

/// Probability data sets, named after the figure whose curves they reproduce.
enum class SweepKind {
    single_atom_vs_tau,  // fig3: P vs tau for r in {0.5, 1, 5}, both detections
    p1_vs_r,             // fig4: k = 1 fan probability vs r, both tau orders
    pk_vs_r              // fig5: fan probability vs r for k in {1, 2, 4, 8}
};

// Everything a `generate` invocation reports. Serialized as a single JSON
// object with fixed key order and full round-trip (17 significant digit)
// numbers, so identical runs emit identical bytes.
struct RunReport {
    Complex alpha;
    int atoms = 0;
    DetectionOutcome basis = DetectionOutcome::minus;
    std::vector<ProtocolStep> steps;
    std::vector<double> per_step_norm_sq;
    std::vector<double> conditional_probs;
    double paper_probability = 1.0;
    double record_probability = 1.0;
    std::vector<CoherentTerm> final_state;
    int target_k = 1;
    double fidelity_to_fan = 0.0;
    std::optional<double> oracle_max_deviation;
};

/// Runs the fan schedule for `atoms` passages and reports both probability
/// conventions plus the fidelity against the target fan-state. With `verify`,
/// cross-runs the truncated oracle and records the maximum deviation.
RunReport cmd_generate(Complex alpha, int atoms, DetectionOutcome basis, bool verify);

void write_report(const RunReport& report, std::ostream& out);

struct SweepOptions {
    SweepKind kind = SweepKind::p1_vs_r;
    double r_min = 0.0;
    double r_max = 3.0;
    int steps = 121;  // sample count; for fig3 this samples tau over [0, 2*pi]
    std::optional<TauOrder> tau_order;  // fig4 only: restrict to one series
    OutputFormat format = OutputFormat::csv;
};

void cmd_prob_sweep(const SweepOptions& options, std::ostream& out);

struct QfuncOptions {
    Complex alpha;
    int k = 1;
    std::optional<std::array<double, 4>> bounds;  // x0,x1,y0,y1; default +-(|alpha|+3)
    int nx = 201;
    int ny = 201;
    OutputFormat format = OutputFormat::csv;
};

void cmd_qfunc(const QfuncOptions& options, std::ostream& out);

// Seeded property suite: engine/oracle equivalence on random protocols,
// sequential vs closed-form states, probability closed forms, detection
// symmetries, and the fan/circle identity. Returns 0 on pass, 1 on the first
// failure (printing the counterexample). tolerance_scale tightens or loosens
// every bound; 0 makes any nonzero deviation fail (harness self-test).
int cmd_verify(std::uint64_t seed, int cases, std::ostream& out,
               double tolerance_scale = 1.0);

/// Full round-trip decimal formatting used by every emitter ("%.17g").
std::string format_double(double v);

}  // namespace fanstate
