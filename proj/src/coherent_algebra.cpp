#include "fanstate/coherent_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace fanstate {

namespace {

constexpr double pi = std::numbers::pi;

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Compensated accumulator; inner products over ~10^3 overlap terms must stay
// well inside the 1e-12 tolerances used throughout.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

CoherentSuperposition::CoherentSuperposition(std::vector<CoherentTerm> terms, double merge_tol)
    : terms_(std::move(terms)), merge_tol_(merge_tol) {
    if (!(merge_tol_ >= 0.0) || !std::isfinite(merge_tol_))
        throw std::invalid_argument("CoherentSuperposition: merge_tol must be finite and >= 0");
    for (const auto& t : terms_)
        if (!is_finite(t.coeff) || !is_finite(t.amp))
            throw std::invalid_argument("CoherentSuperposition: non-finite term");
    canonicalize();
}

CoherentSuperposition CoherentSuperposition::single(Complex coeff, Complex amp, double merge_tol) {
    return CoherentSuperposition({{coeff, amp}}, merge_tol);
}

void CoherentSuperposition::canonicalize() {
    // Greedy clustering keeps the first-seen amplitude as representative;
    // any two surviving representatives are then > merge_tol apart.
    std::vector<CoherentTerm> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        bool absorbed = false;
        for (auto& m : merged) {
            if (std::abs(t.amp - m.amp) <= merge_tol_) {
                m.coeff += t.coeff;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(t);
    }
    std::erase_if(merged, [](const CoherentTerm& t) { return std::abs(t.coeff) == 0.0; });
    auto key = [](const CoherentTerm& t) {
        return std::make_tuple(std::arg(t.amp), std::abs(t.amp), std::arg(t.coeff));
    };
    std::sort(merged.begin(), merged.end(),
              [&key](const CoherentTerm& a, const CoherentTerm& b) { return key(a) < key(b); });
    terms_ = std::move(merged);
}

Complex coherent_overlap(Complex beta, Complex alpha) {
    return std::exp(0.5 * (2.0 * std::conj(beta) * alpha - std::norm(alpha) - std::norm(beta)));
}

Complex superposition_inner(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    KahanSum re, im;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            const Complex v = std::conj(ta.coeff) * tb.coeff * coherent_overlap(ta.amp, tb.amp);
            re.add(v.real());
            im.add(v.imag());
        }
    }
    return {re.sum, im.sum};
}

double norm_sq(const CoherentSuperposition& a) {
    const Complex v = superposition_inner(a, a);
    if (std::abs(v.imag()) >= 1e-12)
        throw std::logic_error("norm_sq: imaginary residue exceeds 1e-12");
    return v.real();
}

GramSum gram_sum(double r_sq, int components) {
    if (components < 1) throw std::invalid_argument("gram_sum: components must be >= 1");
    if (!(r_sq >= 0.0) || !std::isfinite(r_sq))
        throw std::invalid_argument("gram_sum: r_sq must be finite and >= 0");
    KahanSum s;
    s.add(static_cast<double>(components));
    for (int q = 1; q < components; ++q) {
        const double theta = 2.0 * pi * q / components;
        s.add(2.0 * q * std::cos(r_sq * std::sin(theta)) *
              std::exp(r_sq * (std::cos(theta) - 1.0)));
    }
    return {r_sq, components, s.sum};
}

CoherentSuperposition k_photon_coherent(Complex alpha, int components, int index) {
    if (components < 1) throw std::invalid_argument("k_photon_coherent: components must be >= 1");
    if (index < 0 || index >= components)
        throw std::out_of_range("k_photon_coherent: index must lie in [0, components)");
    // At alpha = 0 all components coincide; only the equally weighted index = 0
    // state survives the merge (as the vacuum). The phase-weighted states have
    // no coherent-state expansion there.
    const double spacing =
        components > 1 ? 2.0 * std::abs(alpha) * std::sin(pi / components) : 1.0;
    if (index != 0 && spacing <= CoherentSuperposition::default_merge_tol)
        throw std::invalid_argument(
            "k_photon_coherent: phase-weighted state degenerates at zero amplitude");
    std::vector<CoherentTerm> terms;
    terms.reserve(static_cast<std::size_t>(components));
    for (int l = 0; l < components; ++l) {
        const Complex weight = std::polar(1.0, 2.0 * pi * index * l / components);
        terms.push_back({weight, alpha * std::polar(1.0, 2.0 * pi * l / components)});
    }
    CoherentSuperposition raw(std::move(terms));
    return scale(raw, 1.0 / std::sqrt(norm_sq(raw)));
}

CoherentSuperposition fan_state(Complex alpha, int k) {
    if (k < 1) throw std::invalid_argument("fan_state: k must be >= 1");
    const double r_sq = std::norm(alpha);
    const double normalization = std::sqrt(gram_sum(r_sq, 2 * k).value) /
                                 (k * std::sqrt(gram_sum(r_sq, 4 * k).value));
    std::vector<CoherentTerm> terms;
    terms.reserve(static_cast<std::size_t>(4) * k * k);
    for (int p = 0; p < 2 * k; ++p) {
        const Complex rotated = alpha * std::polar(1.0, pi * p / (2.0 * k));
        for (const auto& t : k_photon_coherent(rotated, 2 * k, 0).terms())
            terms.push_back({normalization * t.coeff, t.amp});
    }
    return CoherentSuperposition(std::move(terms));
}

CoherentSuperposition apply_annihilation_power(const CoherentSuperposition& a, int power) {
    if (power < 0) throw std::invalid_argument("apply_annihilation_power: power must be >= 0");
    std::vector<CoherentTerm> terms = a.terms();
    for (auto& t : terms) {
        Complex factor = 1.0;
        for (int i = 0; i < power; ++i) factor *= t.amp;
        t.coeff *= factor;
    }
    return CoherentSuperposition(std::move(terms), a.merge_tol());
}

CoherentSuperposition rotate(const CoherentSuperposition& a, double theta) {
    const Complex phase = std::polar(1.0, theta);
    std::vector<CoherentTerm> terms = a.terms();
    for (auto& t : terms) t.amp *= phase;
    return CoherentSuperposition(std::move(terms), a.merge_tol());
}

CoherentSuperposition scale(const CoherentSuperposition& a, Complex factor) {
    std::vector<CoherentTerm> terms = a.terms();
    for (auto& t : terms) t.coeff *= factor;
    return CoherentSuperposition(std::move(terms), a.merge_tol());
}

double fidelity(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    const double na = norm_sq(a);
    const double nb = norm_sq(b);
    if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("fidelity: zero-norm input");
    return std::norm(superposition_inner(a, b)) / (na * nb);
}

}  // namespace fanstate
