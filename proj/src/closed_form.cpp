#include "nls/closed_form.hpp"

#include <cmath>

namespace nls {

namespace {

double softplus(double w) {
    // log(1 + e^w) without overflow
    return w > 0.0 ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w));
}

// log of the denominator D = e^{nu x} + c e^{-nu x + 4 zeta nu t - g}
double log_denominator(double x, double t, const ExampleParams& p, double g) {
    const double w = std::log(p.c) - 2.0 * p.nu * x + 4.0 * p.zeta() * p.nu * t - g;
    return p.nu * x + softplus(w);
}

Complex integrate_real_part(const TimeFunction& f, double t) {
    // int_0^t (f + f*) dtau, real by construction
    const Complex v = f.integrate(t, [](Complex c) { return c + std::conj(c); });
    return v;
}

}  // namespace

ExampleParams::ExampleParams(double rho_, double nu_, double c_, double alpha_minus_, double alpha_plus_)
    : rho(rho_), nu(nu_), c(c_), alpha_minus(wrap_phase(alpha_minus_)), alpha_plus(wrap_phase(alpha_plus_)) {
    if (!(rho > 0.0 && nu > 0.0 && rho > nu)) throw ValidationError("ExampleParams: need rho > nu > 0");
    if (!(c > 0.0)) throw ValidationError("ExampleParams: need c > 0");
}

ExampleParams ExampleParams::consistent(double rho, double nu, double c, double alpha_minus) {
    const double ap = matched_alpha_plus(alpha_minus, rho, nu);
    return ExampleParams(rho, nu, c, alpha_minus, ap);
}

double matched_alpha_plus(double alpha_minus, double rho, double nu) {
    const double zeta = std::sqrt(rho * rho - nu * nu);
    return wrap_phase(alpha_minus - 2.0 * std::atan2(nu, zeta));
}

Complex example_initial(double x, const ExampleParams& p) { return example_u(x, 0.0, p, 0.0); }

Complex example_u(double x, double t, const ExampleParams& p, double g) {
    // Logistic blend of the two background phases: with
    // w = ln c - 2 nu x + 4 zeta nu t - g and s = 1/(1+e^{-w}),
    //   u = rho e^{-2 i rho^2 t} [ e^{i a+} (1-s) + e^{i a-} s ].
    const double w = std::log(p.c) - 2.0 * p.nu * x + 4.0 * p.zeta() * p.nu * t - g;
    const double s = 1.0 / (1.0 + std::exp(-w));
    const Complex blend = std::exp(kI * p.alpha_plus) * (1.0 - s) + std::exp(kI * p.alpha_minus) * s;
    return p.rho * std::exp(-2.0 * kI * p.rho * p.rho * t) * blend;
}

Complex example_a(Complex z, const ExampleParams& p) {
    const Complex z1 = p.z1();
    return (z - z1) / (z - std::conj(z1));
}

Complex example_a_dot_z(const ExampleParams& p) { return 1.0 / (2.0 * kI * p.nu); }

Complex example_a_dot_xi(const ExampleParams& p) {
    // chain rule through z = xi + p: dz/dxi = 1 + xi/p at (zeta, i nu)
    const Complex dz_dxi = 1.0 + Complex(p.zeta()) / (kI * p.nu);
    return example_a_dot_z(p) * dz_dxi;
}

Complex example_c1(double t, const ExampleParams& p, double g) {
    const Complex pre = kI * (p.zeta() - kI * p.nu) * p.c / p.rho;
    const Complex expo = kI * p.alpha_minus - 2.0 * kI * p.rho * p.rho * t +
                         Complex(4.0 * p.zeta() * p.nu * t - g);
    return pre * std::exp(expo);
}

double example_g_case_a(const ExampleSourceA& src, double t) {
    return integrate_real_part(src.A1, t).real();
}

double example_g_case_b(const ExampleSourceB& src, double t) {
    // g = -i int (beta - beta*) B dtau; B real makes g real
    if (t == 0.0) return 0.0;
    const int panels = 256;
    const double h = t / panels;
    auto f = [&](double tau) {
        const Complex beta = src.beta1(tau);
        const Complex B = src.B1(tau);
        return -kI * (beta - std::conj(beta)) * B;
    };
    Complex s = 0.5 * (f(0.0) + f(t));
    for (int i = 1; i < panels; ++i) s += f(h * i);
    return (s * h).real();
}

namespace {

ScatteringData example_scattering_common(const ExampleParams& p, double t, double g,
                                         const std::vector<double>& z_grid) {
    ScatteringData sd;
    sd.boundary = p.boundary();
    sd.time = t;
    sd.continuous.reserve(z_grid.size());
    for (double z : z_grid)
        sd.continuous.push_back({z, example_a(Complex(z), p), Complex(0.0), Complex(0.0)});
    sd.eigenvalues = {p.zeta()};
    sd.norming = {example_c1(t, p, g)};
    sd.a_dot_z = {example_a_dot_z(p)};
    sd.a_dot_xi = {example_a_dot_xi(p)};
    return sd;
}

}  // namespace

ScatteringData example_scattering_case_a(const ExampleParams& p, double t, const ExampleSourceA& src,
                                         const std::vector<double>& z_grid) {
    return example_scattering_common(p, t, example_g_case_a(src, t), z_grid);
}

ScatteringData example_scattering_case_b(const ExampleParams& p, double t, const ExampleSourceB& src,
                                         const std::vector<double>& z_grid) {
    return example_scattering_common(p, t, example_g_case_b(src, t), z_grid);
}

Vec2 example_F1_case_a(double x, double t, const ExampleParams& p, const ExampleSourceA& src) {
    const double g = example_g_case_a(src, t);
    const Complex alpha1 = src.alpha1(t);
    const Complex upper = -kI * (p.zeta() - kI * p.nu) / p.rho *
                          std::exp(-kI * p.alpha_plus + 2.0 * kI * p.rho * p.rho * t);
    const double inv_den = std::exp(-log_denominator(x, t, p, g));
    return Vec2(upper, Complex(1.0)) * (alpha1 * inv_den);
}

Vec2 example_G1_case_a(double x, double t, const ExampleParams& p, const ExampleSourceA& src) {
    const double g = example_g_case_a(src, t);
    const Complex alpha1 = src.alpha1(t);
    if (std::abs(alpha1) < 1e-300) throw ValidationError("example_G1_case_a: alpha1 must be nonzero");
    const Complex upper = kI * (p.zeta() - kI * p.nu) / p.rho *
                          std::exp(kI * p.alpha_minus - 2.0 * kI * p.rho * p.rho * t);
    // c e^{4 zeta nu t - g} / D, evaluated in log space
    const double scale = std::exp(std::log(p.c) + 4.0 * p.zeta() * p.nu * t - g - log_denominator(x, t, p, g));
    const Complex pre = p.nu * src.A1(t) / alpha1;
    return Vec2(upper, Complex(1.0)) * (pre * scale);
}

Vec2 example_F1_case_b(double x, double t, const ExampleParams& p, const ExampleSourceB& src) {
    const double g = example_g_case_b(src, t);
    const Complex B1 = src.B1(t);
    const Complex pre = -p.rho * p.rho * B1 / (2.0 * kI * p.nu * (p.zeta() - kI * p.nu));
    const Complex upper = -kI * (p.zeta() - kI * p.nu) / p.rho *
                          std::exp(-kI * p.alpha_plus + 2.0 * kI * p.rho * p.rho * t);
    const double inv_den = std::exp(-log_denominator(x, t, p, g));
    return Vec2(upper, Complex(1.0)) * (pre * inv_den);
}

Vec2 example_G1_case_b(double x, double t, const ExampleParams& p, const ExampleSourceB& src,
                       CaseBG1Convention convention) {
    const double g = example_g_case_b(src, t);
    const double zeta = p.zeta();
    const double logD = log_denominator(x, t, p, g);
    const Complex phase_m = std::exp(kI * p.alpha_minus - 2.0 * kI * p.rho * p.rho * t);
    const Complex phase_p = std::exp(kI * p.alpha_plus - 2.0 * kI * p.rho * p.rho * t);
    const Complex edge = kI * (zeta - kI * p.nu) / p.rho;

    // (nu beta1 - 2 x zeta + i sigma3) acting on Va, sigma3 as the diagonal
    // sign matrix applied to the column
    const Vec2 Va(edge * phase_m, Complex(1.0));
    const Complex lin = p.nu * src.beta1(t) - Complex(2.0 * x * zeta);
    const Vec2 bracket = lin * Va + kI * sigma3(Va);
    const double e1 = std::exp(std::log(p.c) + 4.0 * zeta * p.nu * t - g - logD);
    const Vec2 term1 = (-2.0 * p.nu / (zeta + kI * p.nu)) * (bracket * e1);

    const Vec2 Vb(edge * phase_p, Complex(1.0));
    const double e2 = std::exp(2.0 * p.nu * x - logD);
    const Vec2 term2 = Vb * Complex(e2);

    const double tail_sign = convention == CaseBG1Convention::AsPrinted ? 1.0 : -1.0;
    const Complex theta_phase = std::exp(kI * (p.alpha_plus - p.alpha_minus));
    const Vec2 Vc(-edge * phase_m, tail_sign * theta_phase);
    const double e3 = std::exp(2.0 * std::log(p.c) - 2.0 * p.nu * x + 8.0 * zeta * p.nu * t - 2.0 * g - logD);
    const Vec2 term3 = Vc * Complex(e3);

    return term1 + term2 + term3;
}

ExampleTriple example_field_case_a(double x, double t, const ExampleParams& p, const ExampleSourceA& src) {
    ExampleTriple out;
    out.u = example_u(x, t, p, example_g_case_a(src, t));
    out.F1 = example_F1_case_a(x, t, p, src);
    out.G1 = example_G1_case_a(x, t, p, src);
    return out;
}

ExampleTriple example_field_case_b(double x, double t, const ExampleParams& p, const ExampleSourceB& src,
                                   CaseBG1Convention convention) {
    ExampleTriple out;
    out.u = example_u(x, t, p, example_g_case_b(src, t));
    out.F1 = example_F1_case_b(x, t, p, src);
    out.G1 = example_G1_case_b(x, t, p, src, convention);
    return out;
}

}  // namespace nls
