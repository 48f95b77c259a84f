#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "fanstate/cli.hpp"
#include "fanstate/fock_oracle.hpp"
#include "fanstate/rng.hpp"

namespace fanstate {

namespace {

constexpr double pi = std::numbers::pi;

struct RandomProtocol {
    Complex alpha0;
    std::vector<ProtocolStep> steps;
};

RandomProtocol draw_protocol(DetRng& rng, int max_atoms, double max_radius) {
    RandomProtocol p;
    p.alpha0 = rng.disc(max_radius);
    const int atoms = 1 + static_cast<int>(rng.uniform01() * max_atoms);
    for (int i = 0; i < atoms; ++i) {
        Complex xi, eta;
        do {
            xi = rng.disc(1.0);
            eta = rng.disc(1.0);
        } while (std::norm(xi) + std::norm(eta) < 1e-4);
        const auto outcome =
            rng.uniform01() < 0.5 ? DetectionOutcome::minus : DetectionOutcome::plus;
        p.steps.emplace_back(AtomPreparation::normalized(xi, eta), rng.uniform(0.0, 2.0 * pi),
                             outcome);
    }
    return p;
}

void print_protocol(std::ostream& out, const RandomProtocol& p) {
    out << "  alpha0 = (" << format_double(p.alpha0.real()) << ", "
        << format_double(p.alpha0.imag()) << "), atoms = " << p.steps.size() << "\n";
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const ProtocolStep& s = p.steps[i];
        out << "  step " << i + 1 << ": xi=(" << format_double(s.prep.xi().real()) << ","
            << format_double(s.prep.xi().imag()) << ") eta=(" << format_double(s.prep.eta().real())
            << "," << format_double(s.prep.eta().imag()) << ") tau=" << format_double(s.tau)
            << " outcome=" << (s.outcome == DetectionOutcome::minus ? "minus" : "plus") << "\n";
    }
}

}  // namespace

int cmd_verify(std::uint64_t seed, int cases, std::ostream& out, double tolerance_scale) {
    if (cases < 0) throw std::invalid_argument("verify: cases must be >= 0");
    if (cases == 0) {
        out << "warning: 0 cases requested; nothing was verified\n";
        return 0;
    }
    DetRng rng(seed);

    // Engine vs truncated oracle on random protocols.
    const double oracle_tol = 1e-8 * tolerance_scale;
    for (int c = 0; c < cases; ++c) {
        const RandomProtocol p = draw_protocol(rng, 4, 2.5);
        const ProtocolRun run = run_protocol(p.alpha0, p.steps);
        const auto [oracle_final, oracle_norms] = oracle_protocol(p.alpha0, p.steps, 60);
        double deviation = 0.0;
        for (std::size_t i = 0; i < oracle_norms.size(); ++i)
            deviation =
                std::max(deviation, std::abs(oracle_norms[i] - run.per_step_norm_sq[i]));
        deviation = std::max(
            deviation, sup_distance(embed_superposition(run.final_state, 60), oracle_final));
        if (!(deviation <= oracle_tol)) {
            out << "counterexample (oracle-equivalence, case " << c + 1 << "):\n";
            print_protocol(out, p);
            out << "  max deviation " << format_double(deviation) << " > tolerance "
                << format_double(oracle_tol) << "\n";
            return 1;
        }
    }
    out << "oracle-equivalence: " << cases << " cases ok\n";

    // Sequential fold vs 2^N-term closed form.
    const double norm_tol = 1e-12 * tolerance_scale;
    const double fid_tol = 1e-10 * tolerance_scale;
    for (int c = 0; c < cases; ++c) {
        const RandomProtocol p = draw_protocol(rng, 5, 2.5);
        std::vector<AtomPreparation> preps;
        std::vector<double> taus;
        std::vector<DetectionOutcome> outcomes;
        for (const auto& s : p.steps) {
            preps.push_back(s.prep);
            taus.push_back(s.tau);
            outcomes.push_back(s.outcome);
        }
        const ProtocolRun run = run_protocol(p.alpha0, p.steps);
        const CoherentSuperposition direct =
            closed_form_state(p.alpha0, preps, taus, outcomes);
        const double n_run = norm_sq(run.final_state);
        const double n_direct = norm_sq(direct);
        const double norm_diff = std::abs(n_run - n_direct);
        // Conditioning on every atom flipping can leave a norm at rounding
        // level; compare states only when they are resolvable.
        const double fid_gap =
            (n_run > 1e-20 && n_direct > 1e-20)
                ? std::abs(1.0 - fidelity(run.final_state, direct))
                : 0.0;
        if (!(norm_diff <= norm_tol) || !(fid_gap <= fid_tol)) {
            out << "counterexample (closed-form, case " << c + 1 << "):\n";
            print_protocol(out, p);
            out << "  |norm diff| = " << format_double(norm_diff) << ", |1 - fidelity| = "
                << format_double(fid_gap) << "\n";
            return 1;
        }
    }
    out << "closed-form-identity: " << cases << " cases ok\n";

    // Probability closed forms over the fan schedules.
    const double p1_tol = 1e-12 * tolerance_scale;
    const double pk_tol = 1e-10 * tolerance_scale;
    for (double r = 0.0; r <= 3.0 + 1e-9; r += 0.25) {
        for (const TauOrder order : {TauOrder::pi_first, TauOrder::half_pi_first}) {
            std::vector<ProtocolStep> steps = fan_schedule(2);
            if (order == TauOrder::half_pi_first) std::swap(steps[0], steps[1]);
            const double from_run = run_protocol(r, steps).paper_probability;
            const double closed = p1_closed_form(r, order);
            if (!(std::abs(from_run - closed) <= p1_tol)) {
                out << "counterexample (p1, r = " << format_double(r) << ", "
                    << (order == TauOrder::pi_first ? "pi-first" : "half-pi-first")
                    << "): runner " << format_double(from_run) << " vs closed "
                    << format_double(closed) << "\n";
                return 1;
            }
        }
        for (int atoms = 2; atoms <= 5; ++atoms) {
            const double from_run = run_protocol(r, fan_schedule(atoms)).paper_probability;
            const double closed = pk_paper_formula(r, atoms);
            if (!(std::abs(from_run - closed) <= pk_tol)) {
                out << "counterexample (pk, r = " << format_double(r)
                    << ", atoms = " << atoms << "): runner " << format_double(from_run)
                    << " vs closed " << format_double(closed) << "\n";
                return 1;
            }
        }
    }
    out << "probability-closed-forms: ok\n";

    // Detection symmetries of the single-passage probabilities.
    const double sym_tol = 1e-14 * tolerance_scale;
    for (int i = 0; i <= 16; ++i) {
        const double tau = 2.0 * pi * i / 16.0;
        for (const double r : {0.0, 0.3, 0.5, 1.0, 2.0, 5.0}) {
            using enum DetectionOutcome;
            const auto prob = [&](DetectionOutcome prep, DetectionOutcome det) {
                return single_atom_probability(AtomPreparation::pure(prep), det, tau, r);
            };
            const double keep = std::abs(prob(plus, plus) - prob(minus, minus));
            const double flip = std::abs(prob(plus, minus) - prob(minus, plus));
            if (!(keep <= sym_tol) || !(flip <= sym_tol)) {
                out << "counterexample (symmetry, tau = " << format_double(tau)
                    << ", r = " << format_double(r) << "): |dP_same| = " << format_double(keep)
                    << ", |dP_flip| = " << format_double(flip) << "\n";
                return 1;
            }
        }
    }
    out << "detection-symmetries: ok\n";

    // Fan-state vs full-circle identity.
    const double fan_tol = 1e-12 * tolerance_scale;
    for (const int k : {1, 2, 4, 8}) {
        for (const Complex alpha : {Complex{0.8, 0.0}, Complex{1.5, 0.4}, Complex{-0.6, 2.0}}) {
            const double gap =
                std::abs(1.0 - fidelity(fan_state(alpha, k), k_photon_coherent(alpha, 4 * k, 0)));
            if (!(gap <= fan_tol)) {
                out << "counterexample (fan-circle, k = " << k << ", alpha = ("
                    << format_double(alpha.real()) << ", " << format_double(alpha.imag())
                    << ")): |1 - fidelity| = " << format_double(gap) << "\n";
                return 1;
            }
        }
    }
    out << "fan-circle-identity: ok\n";

    out << "verify: all suites passed\n";
    return 0;
}

}  // namespace fanstate
