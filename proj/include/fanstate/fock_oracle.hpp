#pragma once

#include <utility>
#include <vector>

#include "fanstate/cavity_protocol.hpp"
#include "fanstate/coherent_algebra.hpp"

namespace fanstate {

// Truncated number-basis field vector. Everything in this module is the
// independent verification route: states live in C^D, the evolution operator
// is applied either in closed form or as a Taylor series, and results are
// compared against the exact coherent-superposition engine.
struct FockVector {
    std::vector<Complex> amps;

    FockVector() = default;
    explicit FockVector(int dim);
    explicit FockVector(std::vector<Complex> a) : amps(std::move(a)) {}

    int dim() const { return static_cast<int>(amps.size()); }
    Complex& operator[](int n) { return amps[static_cast<std::size_t>(n)]; }
    Complex operator[](int n) const { return amps[static_cast<std::size_t>(n)]; }
    double norm_sq() const;
};

/// Atom (|->,|+>) tensor field vector; both blocks share the truncation dim.
struct JointState {
    FockVector minus;
    FockVector plus;

    JointState(FockVector m, FockVector p);
    int dim() const { return minus.dim(); }
    double norm_sq() const { return minus.norm_sq() + plus.norm_sq(); }
};

/// 2x2 complex matrix in the (|->, |+>) basis.
struct AtomMatrix {
    Complex m[2][2];
};

AtomMatrix operator*(const AtomMatrix& a, const AtomMatrix& b);
AtomMatrix operator*(Complex s, const AtomMatrix& a);

/// The all-ones coupling matrix W = |+><-| + |-><+| + |-><-| + |+><+|.
AtomMatrix w_matrix();

/// Number-basis expansion of |alpha>: c_{n+1} = c_n * alpha / sqrt(n+1).
FockVector coherent_fock(Complex alpha, int dim);

/// Poisson tail sum_{n>=dim} e^{-r^2} r^{2n} / n! (the truncation error budget).
double truncation_tail(double r, int dim);

/// Default truncation for radius r, sized so the Poisson tail is negligible.
int default_dim(double r);

/// Embeds an exact coherent superposition into the truncated number basis.
FockVector embed_superposition(const CoherentSuperposition& a, int dim);

/// max_n |a_n - b_n| over both atom blocks where applicable.
double sup_distance(const FockVector& a, const FockVector& b);
double sup_distance(const JointState& a, const JointState& b);

// Closed-form passage operator U(tau) = 1 + (W/2)(e^{i tau a^dag a} - 1),
// applied with exact diagonal phases. Unitary.
JointState apply_U_closed(const JointState& psi, double tau);

// Taylor-series route to the same operator: U = sum_l (i (tau/2) a^dag a W)^l / l!,
// evaluated by repeated application of the generator over short substeps (at
// most one radian of top-level phase each) so the partial sums never grow.
// `terms` caps the per-substep order; terms >= 4 * tau * dim always suffices.
// Throws if the final retained term exceeds 1e-13 of the result norm.
JointState apply_U_series(const JointState& psi, double tau, int terms);

/// Unnormalized conditional field state for the given exit detection.
FockVector project_outcome(const JointState& psi, DetectionOutcome outcome);

// Whole protocol in the truncated representation: per step, embed the atom
// preparation, apply U(tau) in closed form, project on the detected state.
// Returns the unnormalized final field vector and the cumulative ||Phi_n||^2
// per step. Requires truncation_tail(|alpha0|, dim) < 1e-12.
std::pair<FockVector, std::vector<double>> oracle_protocol(
    Complex alpha0, const std::vector<ProtocolStep>& steps, int dim);

}  // namespace fanstate
