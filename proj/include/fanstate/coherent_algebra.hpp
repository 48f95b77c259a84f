#pragma once

#include <complex>
#include <vector>

namespace fanstate {

using Complex = std::complex<double>;

/// One weighted component of a coherent-state superposition: coeff * |amp>.
struct CoherentTerm {
    Complex coeff;
    Complex amp;
};

// Finite weighted sum of coherent states. This is the exact field-state
// representation: every protocol state in this artifact is such a sum, so all
// inner products reduce to closed-form Gaussian overlaps and no truncation is
// involved.
//
// Canonical form maintained by the constructor:
//   - terms whose amplitudes coincide within merge_tol are merged by summing
//     coefficients (the first-seen amplitude is kept as representative),
//   - terms whose merged coefficient is exactly zero are dropped,
//   - terms are sorted by (arg(amp), |amp|, arg(coeff)).
class CoherentSuperposition {
public:
    static constexpr double default_merge_tol = 1e-9;

    CoherentSuperposition() = default;  // the zero vector (no terms)
    explicit CoherentSuperposition(std::vector<CoherentTerm> terms,
                                   double merge_tol = default_merge_tol);

    /// coeff * |amp> as a one-term superposition.
    static CoherentSuperposition single(Complex coeff, Complex amp,
                                        double merge_tol = default_merge_tol);

    const std::vector<CoherentTerm>& terms() const { return terms_; }
    double merge_tol() const { return merge_tol_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

private:
    std::vector<CoherentTerm> terms_;
    double merge_tol_ = default_merge_tol;

    void canonicalize();
};

// Gram sum S(r^2, K) of K coherent states equally spaced on the circle of
// squared radius r^2: the sum of all K^2 pairwise overlaps <alpha_q'|alpha_q>.
// Real and positive; equals K^2 at r = 0 and is the convention-free
// normalization primitive for circle and fan states (unit-norm states carry
// the coefficient S^{-1/2}).
struct GramSum {
    double r_sq;
    int components;
    double value;
};

/// Overlap <beta|alpha> = exp[(2 conj(beta) alpha - |alpha|^2 - |beta|^2)/2].
Complex coherent_overlap(Complex beta, Complex alpha);

/// Bilinear extension of the overlap: sum_ij conj(c_i^A) c_j^B <amp_i^A|amp_j^B>.
Complex superposition_inner(const CoherentSuperposition& a,
                            const CoherentSuperposition& b);

/// <A|A>. The imaginary residue must be below 1e-12 (it is discarded).
double norm_sq(const CoherentSuperposition& a);

GramSum gram_sum(double r_sq, int components);

// Unit-norm eigenstate of a^K with eigenvalue alpha^K: a superposition of
// `components` coherent states on the circle |alpha|, with phase weights
// exp(2*pi*i*index*l/K) on the l-th component. index = 0 gives the equally
// weighted circle state with coefficient S(r^2,K)^{-1/2}.
CoherentSuperposition k_photon_coherent(Complex alpha, int components, int index);

// Unit-norm fan-state: the sum of 2k circle states of 2k components each,
// rotated in steps of pi/(2k). After merging this is exactly the circle state
// of 4k components spanning the full turn; the normalization factor is
// sqrt(S(r^2,2k)) / (k * sqrt(S(r^2,4k))).
CoherentSuperposition fan_state(Complex alpha, int k);

/// a^power applied termwise: each coefficient is multiplied by amp^power.
CoherentSuperposition apply_annihilation_power(const CoherentSuperposition& a, int power);

/// Phase-space rotation: every amplitude is multiplied by exp(i*theta).
CoherentSuperposition rotate(const CoherentSuperposition& a, double theta);

/// Coefficients multiplied by factor; amplitudes unchanged.
CoherentSuperposition scale(const CoherentSuperposition& a, Complex factor);

/// |<A|B>|^2 / (<A|A><B|B>), insensitive to global phase. Throws on zero norm.
double fidelity(const CoherentSuperposition& a, const CoherentSuperposition& b);

}  // namespace fanstate
