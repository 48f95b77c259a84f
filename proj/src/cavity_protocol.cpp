#include "fanstate/cavity_protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fanstate/coherent_algebra.hpp"

namespace fanstate {

namespace {
constexpr double pi = std::numbers::pi;
}

AtomPreparation::AtomPreparation(Complex xi, Complex eta) : xi_(xi), eta_(eta) {
    if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()) ||
        !std::isfinite(eta.real()) || !std::isfinite(eta.imag()))
        throw std::invalid_argument("AtomPreparation: non-finite coefficients");
    const double total = std::norm(xi) + std::norm(eta);
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("AtomPreparation: |xi|^2 + |eta|^2 must be 1");
}

AtomPreparation AtomPreparation::normalized(Complex xi, Complex eta) {
    const double total = std::norm(xi) + std::norm(eta);
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::invalid_argument("AtomPreparation: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(total);
    return AtomPreparation(xi * inv, eta * inv);
}

AtomPreparation AtomPreparation::ground() { return AtomPreparation(1.0, 0.0); }
AtomPreparation AtomPreparation::excited() { return AtomPreparation(0.0, 1.0); }

AtomPreparation AtomPreparation::pure(DetectionOutcome basis) {
    return basis == DetectionOutcome::minus ? ground() : excited();
}

ProtocolStep::ProtocolStep(AtomPreparation prep_, double tau_, DetectionOutcome outcome_)
    : prep(prep_), tau(tau_), outcome(outcome_) {
    if (!std::isfinite(tau) || tau < 0.0)
        throw std::invalid_argument("ProtocolStep: tau must be finite and >= 0");
}

CoherentSuperposition kraus_step(const CoherentSuperposition& a, const ProtocolStep& step) {
    const Complex xi = step.prep.xi();
    const Complex eta = step.prep.eta();
    const double s = sign_of(step.outcome);
    const Complex stay = 0.5 * s * (eta - xi);
    const Complex turn = 0.5 * (eta + xi);
    const Complex phase = std::polar(1.0, step.tau);
    std::vector<CoherentTerm> terms;
    terms.reserve(2 * a.size());
    for (const auto& t : a.terms()) {
        terms.push_back({stay * t.coeff, t.amp});
        terms.push_back({turn * t.coeff, t.amp * phase});
    }
    return CoherentSuperposition(std::move(terms), a.merge_tol());
}

ProtocolRun run_protocol(Complex alpha0, const std::vector<ProtocolStep>& steps) {
    ProtocolRun run;
    run.alpha0 = alpha0;
    run.steps = steps;
    run.final_state = CoherentSuperposition::single(1.0, alpha0);
    double previous = 1.0;
    for (const auto& step : steps) {
        run.final_state = kraus_step(run.final_state, step);
        const double n2 = norm_sq(run.final_state);
        run.per_step_norm_sq.push_back(n2);
        run.conditional_probs.push_back(n2 / previous);
        run.paper_probability *= n2;
        previous = n2;
    }
    run.record_probability = previous;
    return run;
}

CoherentSuperposition closed_form_state(Complex alpha0,
                                        const std::vector<AtomPreparation>& preps,
                                        const std::vector<double>& taus,
                                        const std::vector<DetectionOutcome>& outcomes) {
    const std::size_t n = preps.size();
    if (taus.size() != n || outcomes.size() != n)
        throw std::invalid_argument("closed_form_state: list lengths differ");
    if (n >= 8 * sizeof(std::size_t) - 1)
        throw std::invalid_argument("closed_form_state: too many atoms for subset enumeration");
    const double weight = std::ldexp(1.0, -static_cast<int>(n));  // 2^-N
    std::vector<CoherentTerm> terms;
    terms.reserve(std::size_t{1} << n);
    for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
        Complex coeff = weight;
        double total_tau = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (subset & (std::size_t{1} << j)) {
                coeff *= preps[j].eta() + preps[j].xi();
                total_tau += taus[j];
            } else {
                coeff *= static_cast<double>(sign_of(outcomes[j])) *
                         (preps[j].eta() - preps[j].xi());
            }
        }
        terms.push_back({coeff, alpha0 * std::polar(1.0, total_tau)});
    }
    return CoherentSuperposition(std::move(terms));
}

double single_atom_probability(const AtomPreparation& prep, DetectionOutcome outcome,
                               double tau, double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("single_atom_probability: r must be finite and >= 0");
    const double r_sq = r * r;
    const double envelope = std::exp(-r_sq * (1.0 - std::cos(tau)));
    const double phase = r_sq * std::sin(tau);
    const double population = std::norm(prep.eta()) - std::norm(prep.xi());
    const double coherence = 2.0 * std::imag(std::conj(prep.xi()) * prep.eta());
    return 0.5 * (1.0 + sign_of(outcome) * envelope *
                            (population * std::cos(phase) + coherence * std::sin(phase)));
}

bool probability_symmetries_check(double tau, double r) {
    const auto p = [&](DetectionOutcome prep, DetectionOutcome out) {
        return single_atom_probability(AtomPreparation::pure(prep), out, tau, r);
    };
    using enum DetectionOutcome;
    return std::abs(p(plus, plus) - p(minus, minus)) < 1e-14 &&
           std::abs(p(plus, minus) - p(minus, plus)) < 1e-14;
}

std::vector<ProtocolStep> fan_schedule(int atoms, DetectionOutcome basis) {
    if (atoms < 2) throw std::invalid_argument("fan_schedule: at least 2 atoms required");
    std::vector<ProtocolStep> steps;
    steps.reserve(static_cast<std::size_t>(atoms));
    for (int j = 1; j <= atoms; ++j)
        steps.emplace_back(AtomPreparation::pure(basis), std::ldexp(pi, 1 - j), basis);
    return steps;
}

double p1_closed_form(double r, TauOrder order) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("p1_closed_form: r must be finite and >= 0");
    const double r_sq = r * r;
    const double base =
        0.125 * (1.0 + std::exp(-2.0 * r_sq) + 2.0 * std::exp(-r_sq) * std::cos(r_sq));
    const double second = order == TauOrder::pi_first
                              ? 1.0 + std::exp(-2.0 * r_sq)
                              : 1.0 + std::exp(-r_sq) * std::cos(r_sq);
    return base * second;
}

double pk_paper_formula(double r, int atoms) {
    if (atoms < 2) throw std::invalid_argument("pk_paper_formula: at least 2 atoms required");
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("pk_paper_formula: r must be finite and >= 0");
    const double r_sq = r * r;
    double probability = 1.0;
    for (int n = 1; n <= atoms; ++n)
        probability *= gram_sum(r_sq, 1 << n).value / std::ldexp(1.0, 2 * n);
    return probability;
}

}  // namespace fanstate
