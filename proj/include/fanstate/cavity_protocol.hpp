#pragma once

#include <vector>

#include "fanstate/coherent_algebra.hpp"

namespace fanstate {

/// Exit measurement of one atom: ground |-> or excited |+>.
enum class DetectionOutcome : int { minus = -1, plus = +1 };

inline int sign_of(DetectionOutcome s) { return static_cast<int>(s); }

// Entry state xi|-> + eta|+> of one atom. The upper level of the Lambda
// configuration stays empty, so |xi|^2 + |eta|^2 = 1 is required.
class AtomPreparation {
public:
    /// Rejects coefficients that are not unit-normalized within 1e-12.
    AtomPreparation(Complex xi, Complex eta);

    /// Rescales an arbitrary nonzero pair to unit norm.
    static AtomPreparation normalized(Complex xi, Complex eta);
    static AtomPreparation ground();   // |->
    static AtomPreparation excited();  // |+>
    static AtomPreparation pure(DetectionOutcome basis);

    Complex xi() const { return xi_; }
    Complex eta() const { return eta_; }

private:
    Complex xi_, eta_;
};

// One atom passage: preparation, dimensionless interaction time tau = 2*lambda*t,
// and the detected exit state.
struct ProtocolStep {
    ProtocolStep(AtomPreparation prep, double tau, DetectionOutcome outcome);

    AtomPreparation prep;
    double tau;
    DetectionOutcome outcome;
};

// Full record of a sequential run. final_state is the unnormalized conditional
// field state Phi_N; norms are tracked per step under both probability
// conventions:
//   paper_probability  = product of all intermediate ||Phi_n||^2,
//   record_probability = ||Phi_N||^2 (the standard measurement-record value).
// The two differ for N >= 2; both are always reported.
struct ProtocolRun {
    Complex alpha0;
    std::vector<ProtocolStep> steps;
    std::vector<double> per_step_norm_sq;
    std::vector<double> conditional_probs;
    double paper_probability = 1.0;
    double record_probability = 1.0;
    CoherentSuperposition final_state;
};

// Unnormalized conditional map of one passage:
//   Phi -> [s(eta - xi) Phi + (eta + xi) e^{i tau a^dag a} Phi] / 2
// with s = +-1 for detection in |+->. The rotation acts on coherent amplitudes
// exactly: |beta> -> |beta e^{i tau}>.
CoherentSuperposition kraus_step(const CoherentSuperposition& a, const ProtocolStep& step);

/// Folds kraus_step over the steps starting from |alpha0>, recording norms.
ProtocolRun run_protocol(Complex alpha0, const std::vector<ProtocolStep>& steps);

// Builds Phi_N in one shot from the 2^N-term closed form: the subset T of
// atoms contributing their rotation carries coefficient
//   2^{-N} * prod_{p not in T} s_p (eta_p - xi_p) * prod_{q in T} (eta_q + xi_q)
// and amplitude alpha0 * exp(i sum_{q in T} tau_q). Must agree with
// run_protocol's final state in both norm and fidelity.
CoherentSuperposition closed_form_state(Complex alpha0,
                                        const std::vector<AtomPreparation>& preps,
                                        const std::vector<double>& taus,
                                        const std::vector<DetectionOutcome>& outcomes);

// Closed form for the single-passage outcome probability at field radius r:
//   1/2 {1 + s e^{-r^2(1-cos tau)} [(|eta|^2-|xi|^2) cos(r^2 sin tau)
//                                   + 2 Im(conj(xi) eta) sin(r^2 sin tau)]}.
// Equals norm_sq(kraus_step(|alpha>, step)) for any alpha with |alpha| = r.
double single_atom_probability(const AtomPreparation& prep, DetectionOutcome outcome,
                               double tau, double r);

/// Checks P(+|+) == P(-|-) and P(-|+) == P(+|-) within 1e-14 at (tau, r).
bool probability_symmetries_check(double tau, double r);

// The fan-generation schedule: N atoms, tau_j = pi / 2^{j-1}, each atom
// prepared and detected in the same pure state `basis`.
std::vector<ProtocolStep> fan_schedule(int atoms, DetectionOutcome basis = DetectionOutcome::minus);

/// Which of the two N = 2 interaction times comes first.
enum class TauOrder { pi_first, half_pi_first };

// Probability of the k = 1 fan-state after two atoms, product convention:
//   (1/8)(1 + e^{-2r^2} + 2 e^{-r^2} cos r^2) * (1 + e^{-2r^2})          [pi first]
//   (1/8)(1 + e^{-2r^2} + 2 e^{-r^2} cos r^2) * (1 + e^{-r^2} cos r^2)   [pi/2 first]
double p1_closed_form(double r, TauOrder order);

// Product-convention probability of the k = 2^{N-2} fan-state over the fan
// schedule: prod_{n=1}^{N} S(r^2, 2^n) / 2^{2n}.
double pk_paper_formula(double r, int atoms);

}  // namespace fanstate
