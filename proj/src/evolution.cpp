#include "nls/evolution.hpp"

#include <cmath>

#include "nls/spectral.hpp"

namespace nls {

void SourceSpec::validate(double t_max) const {
    const int probes = 17;
    for (std::size_t n = 0; n < terms.size(); ++n) {
        for (int k = 0; k <= probes; ++k) {
            const double t = t_max * k / probes;
            if (kind == SourceCase::A) {
                if (std::abs(terms[n].alpha(t)) < 1e-300)
                    throw ValidationError("SourceSpec: alpha_n(t) must be nonzero (term " + std::to_string(n) + ")");
            } else {
                const Complex Bv = terms[n].B(t);
                if (std::abs(Bv.imag()) > 1e-12 * std::max(1.0, std::abs(Bv.real())))
                    throw ValidationError("SourceSpec: B_n(t) must be real valued (term " + std::to_string(n) + ")");
            }
        }
    }
}

Complex evolve_b(Complex b0, double xi, double p, double t, double rho) {
    return b0 * std::exp(-2.0 * kI * rho * rho * t - 4.0 * kI * xi * p * t);
}

Complex evolve_c_case_a(Complex c0, double xi_k, Complex p_k, double t, const TimeFunction& A_k) {
    const double rho2 = xi_k * xi_k - (p_k * p_k).real();  // p_k = i nu_k
    const Complex source = A_k.integrate(t, [](Complex v) { return v + std::conj(v); });
    return c0 * std::exp(-2.0 * kI * rho2 * t - 4.0 * kI * xi_k * p_k * t - source);
}

Complex evolve_c_case_b(Complex c0, double xi_k, Complex p_k, double t, const TimeFunction& beta_k,
                        const TimeFunction& B_k) {
    if (t == 0.0) return c0;
    const int panels = 256;
    const double h = t / panels;
    auto f = [&](double tau) {
        const Complex beta = beta_k(tau);
        return (beta - std::conj(beta)) * B_k(tau);
    };
    Complex s = 0.5 * (f(0.0) + f(t));
    for (int i = 1; i < panels; ++i) s += f(h * i);
    const Complex source = kI * (s * h);
    const double rho2 = xi_k * xi_k - (p_k * p_k).real();
    return c0 * std::exp(-2.0 * kI * rho2 * t - 4.0 * kI * xi_k * p_k * t + source);
}

ScatteringData evolve_scattering_data(const ScatteringData& sd0, double t, const SourceSpec& spec) {
    if (spec.n_terms() != sd0.n_eigen())
        throw ArityMismatch("evolve_scattering_data: source terms (" + std::to_string(spec.n_terms()) +
                            ") do not match eigenvalue count (" + std::to_string(sd0.n_eigen()) + ")");
    spec.validate(t);

    const double rho = sd0.boundary.rho;
    ScatteringData sd = sd0;  // a, eigenvalues, a_dot copied unchanged
    sd.time = sd0.time + t;

    for (auto& s : sd.continuous) {
        const auto [xi, p] = from_uniformization(Complex(s.z, 0.0), sd0.boundary);
        s.b = evolve_b(s.b, xi.real(), p.real(), t, rho);
        s.r = s.b / s.a;
    }

    for (std::size_t k = 0; k < sd.n_eigen(); ++k) {
        const Complex p_k = kI * sd.nu_n(k);
        if (spec.kind == SourceCase::A)
            sd.norming[k] = evolve_c_case_a(sd.norming[k], sd.eigenvalues[k], p_k, t, spec.terms[k].A);
        else
            sd.norming[k] = evolve_c_case_b(sd.norming[k], sd.eigenvalues[k], p_k, t,
                                            spec.terms[k].beta, spec.terms[k].B);
    }
    return sd;
}

}  // namespace nls
