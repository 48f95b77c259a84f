#include "fanstate/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fanstate {

FockVector::FockVector(int dim) {
    if (dim < 1) throw std::invalid_argument("FockVector: dim must be >= 1");
    amps.assign(static_cast<std::size_t>(dim), Complex{0.0, 0.0});
}

double FockVector::norm_sq() const {
    double sum = 0.0, carry = 0.0;
    for (const Complex& c : amps) {
        const double y = std::norm(c) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

JointState::JointState(FockVector m, FockVector p) : minus(std::move(m)), plus(std::move(p)) {
    if (minus.dim() != plus.dim() || minus.dim() < 1)
        throw std::invalid_argument("JointState: atom blocks must share a dimension >= 1");
}

AtomMatrix operator*(const AtomMatrix& a, const AtomMatrix& b) {
    AtomMatrix out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return out;
}

AtomMatrix operator*(Complex s, const AtomMatrix& a) {
    AtomMatrix out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.m[i][j] = s * a.m[i][j];
    return out;
}

AtomMatrix w_matrix() {
    AtomMatrix w{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) w.m[i][j] = 1.0;
    return w;
}

FockVector coherent_fock(Complex alpha, int dim) {
    FockVector v(dim);
    Complex c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        v[n] = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return v;
}

double truncation_tail(double r, int dim) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("truncation_tail: r must be finite and >= 0");
    if (dim < 1) throw std::invalid_argument("truncation_tail: dim must be >= 1");
    if (r == 0.0) return 0.0;
    const double r_sq = r * r;
    // Leading term in log space, then forward ratios; the Poisson terms beyond
    // the mean decay faster than geometrically.
    double term = std::exp(dim * std::log(r_sq) - std::lgamma(dim + 1.0) - r_sq);
    double sum = 0.0;
    for (int n = dim; n < dim + 20000; ++n) {
        sum += term;
        term *= r_sq / (n + 1.0);
        if (term < sum * 1e-20 || term < 1e-320) break;
    }
    return sum;
}

int default_dim(double r) {
    return std::max(32, static_cast<int>(std::ceil(r * r + 10.0 * r + 20.0)));
}

FockVector embed_superposition(const CoherentSuperposition& a, int dim) {
    FockVector out(dim);
    for (const auto& t : a.terms()) {
        const FockVector component = coherent_fock(t.amp, dim);
        for (int n = 0; n < dim; ++n) out[n] += t.coeff * component[n];
    }
    return out;
}

double sup_distance(const FockVector& a, const FockVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sup_distance: dimension mismatch");
    double worst = 0.0;
    for (int n = 0; n < a.dim(); ++n) worst = std::max(worst, std::abs(a[n] - b[n]));
    return worst;
}

double sup_distance(const JointState& a, const JointState& b) {
    return std::max(sup_distance(a.minus, b.minus), sup_distance(a.plus, b.plus));
}

JointState apply_U_closed(const JointState& psi, double tau) {
    const int dim = psi.dim();
    FockVector minus(dim), plus(dim);
    for (int n = 0; n < dim; ++n) {
        const Complex half_shift = 0.5 * (std::polar(1.0, tau * n) - 1.0);
        const Complex mixed = half_shift * (psi.minus[n] + psi.plus[n]);
        minus[n] = psi.minus[n] + mixed;
        plus[n] = psi.plus[n] + mixed;
    }
    return JointState(std::move(minus), std::move(plus));
}

namespace {

// One application of the series generator i*(tau/2)*(a^dag a)*W.
JointState apply_generator(const JointState& psi, double half_tau) {
    const int dim = psi.dim();
    FockVector minus(dim), plus(dim);
    const Complex scale{0.0, half_tau};
    for (int n = 0; n < dim; ++n) {
        const Complex mixed = scale * static_cast<double>(n) * (psi.minus[n] + psi.plus[n]);
        minus[n] = mixed;
        plus[n] = mixed;
    }
    return JointState(std::move(minus), std::move(plus));
}

void accumulate(JointState& acc, const JointState& term) {
    for (int n = 0; n < acc.dim(); ++n) {
        acc.minus[n] += term.minus[n];
        acc.plus[n] += term.plus[n];
    }
}

}  // namespace

JointState apply_U_series(const JointState& psi, double tau, int terms) {
    if (!std::isfinite(tau) || tau < 0.0)
        throw std::invalid_argument("apply_U_series: tau must be finite and >= 0");
    const int dim = psi.dim();
    // Splitting into substeps of at most one radian of top-level phase keeps
    // every partial sum O(1); a single sweep at tau*dim >> 1 would cancel
    // catastrophically. U(tau) = U(tau/m)^m since the generator is fixed.
    const int substeps = std::max(1, static_cast<int>(std::ceil(tau * (dim - 1))));
    const double sub_tau = tau / substeps;
    const int order = std::clamp(terms, 20, 60);
    JointState state = psi;
    for (int s = 0; s < substeps; ++s) {
        JointState acc = state;
        JointState term = state;
        for (int l = 1; l <= order; ++l) {
            term = apply_generator(term, 0.5 * sub_tau);
            for (int n = 0; n < dim; ++n) {
                term.minus[n] /= static_cast<double>(l);
                term.plus[n] /= static_cast<double>(l);
            }
            accumulate(acc, term);
        }
        const double tail = std::sqrt(term.norm_sq());
        if (tail > 1e-13 * std::sqrt(acc.norm_sq()))
            throw std::runtime_error("apply_U_series: series did not converge at the given order");
        state = std::move(acc);
    }
    return state;
}

FockVector project_outcome(const JointState& psi, DetectionOutcome outcome) {
    return outcome == DetectionOutcome::minus ? psi.minus : psi.plus;
}

std::pair<FockVector, std::vector<double>> oracle_protocol(
    Complex alpha0, const std::vector<ProtocolStep>& steps, int dim) {
    if (truncation_tail(std::abs(alpha0), dim) >= 1e-12)
        throw std::invalid_argument("oracle_protocol: truncation budget exceeded at this dim");
    FockVector field = coherent_fock(alpha0, dim);
    std::vector<double> per_step_norm_sq;
    per_step_norm_sq.reserve(steps.size());
    for (const auto& step : steps) {
        FockVector minus(dim), plus(dim);
        for (int n = 0; n < dim; ++n) {
            minus[n] = step.prep.xi() * field[n];
            plus[n] = step.prep.eta() * field[n];
        }
        const JointState evolved =
            apply_U_closed(JointState(std::move(minus), std::move(plus)), step.tau);
        field = project_outcome(evolved, step.outcome);
        per_step_norm_sq.push_back(field.norm_sq());
    }
    return {std::move(field), std::move(per_step_norm_sq)};
}

}  // namespace fanstate
