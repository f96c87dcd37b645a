#include "nls/jost.hpp"

#include <cmath>

namespace nls {

namespace {

struct Rhs {
    Complex d1, d2;  // diagonal of M - cond*i*p
    inline Vec2 apply(Complex u, const Vec2& v) const {
        return {d1 * v.a + std::conj(u) * v.b, u * v.a + d2 * v.b};
    }
};

struct RhsAug {
    Rhs base;
    Complex p1, p2;  // diagonal of d/dxi (M - cond*i*p)
    inline Vec2 apply_d(const Vec2& m, const Vec2& s, Complex u) const {
        Vec2 r = base.apply(u, s);
        r.a += p1 * m.a;
        r.b += p2 * m.b;
        return r;
    }
};

double side_sign(ColumnKind kind) {
    // conditioning exponent: phi, psi_bar carry e^{-ipx}; phi_bar, psi e^{+ipx}
    return (kind == ColumnKind::Phi || kind == ColumnKind::PsiBar) ? -1.0 : 1.0;
}

bool starts_left(ColumnKind kind) { return kind == ColumnKind::Phi || kind == ColumnKind::PhiBar; }

}  // namespace

Vec2 JostSolution::raw_dxi(int i) const {
    if (!has_dxi()) throw NlsError("JostSolution: not integrated with the xi-augmented system");
    const double x = sgrid.x(i);
    const Complex dp_dxi = point.xi / point.p;
    const Vec2 extra = m[static_cast<std::size_t>(i)] * (cond * kI * dp_dxi * x);
    return (dm[static_cast<std::size_t>(i)] + extra) * factor(i);
}

Complex jost_det_normalization(const SpectralPoint& pt, const BoundaryData& b) {
    return 2.0 * pt.p * (pt.xi - pt.p) / (b.rho * b.rho);
}

Vec2 background_vector(ColumnKind kind, const SpectralPoint& pt, const BoundaryData& b, double t) {
    const Complex w = kI * (pt.xi - pt.p) / b.rho;
    switch (kind) {
        case ColumnKind::Phi:
            return {Complex(1.0), w * std::exp(kI * b.mu_minus(t))};
        case ColumnKind::PhiBar:
            return {-w * std::exp(-kI * b.mu_minus(t)), Complex(1.0)};
        case ColumnKind::Psi:
            return {-w * std::exp(-kI * b.mu_plus(t)), Complex(1.0)};
        case ColumnKind::PsiBar:
            return {Complex(1.0), w * std::exp(kI * b.mu_plus(t))};
    }
    return {};
}

Vec2 background_vector_dxi(ColumnKind kind, const SpectralPoint& pt, const BoundaryData& b, double t) {
    // d/dxi of (xi - p) is 1 - xi/p
    const Complex dw = kI * (1.0 - pt.xi / pt.p) / b.rho;
    switch (kind) {
        case ColumnKind::Phi:
            return {Complex(0.0), dw * std::exp(kI * b.mu_minus(t))};
        case ColumnKind::PhiBar:
            return {-dw * std::exp(-kI * b.mu_minus(t)), Complex(0.0)};
        case ColumnKind::Psi:
            return {-dw * std::exp(-kI * b.mu_plus(t)), Complex(0.0)};
        case ColumnKind::PsiBar:
            return {Complex(0.0), dw * std::exp(kI * b.mu_plus(t))};
    }
    return {};
}

JostSolution jost_column(const PotentialField& field, const SpectralPoint& pt, ColumnKind kind,
                         bool with_dxi, const ScatteringOptions& opts) {
    const Grid& fg = field.grid();
    const int steps = (fg.n - 1) / 2;
    JostSolution sol;
    sol.sgrid = Grid(fg.x0, 2.0 * fg.dx, steps + 1);
    sol.point = pt;
    sol.cond = side_sign(kind);
    sol.m.resize(static_cast<std::size_t>(steps + 1));
    if (with_dxi) sol.dm.resize(static_cast<std::size_t>(steps + 1));

    const BoundaryData& b = field.boundary();
    const double t = field.time();
    const bool left = starts_left(kind);

    Rhs rhs;
    const Complex shift = -sol.cond * kI * pt.p;
    rhs.d1 = -kI * pt.xi + shift;
    rhs.d2 = kI * pt.xi + shift;
    RhsAug aug;
    aug.base = rhs;
    const Complex dshift = -sol.cond * kI * (pt.xi / pt.p);
    aug.p1 = -kI + dshift;
    aug.p2 = kI + dshift;

    const double h = left ? sol.sgrid.dx : -sol.sgrid.dx;
    const auto& u = field.samples();

    int node = left ? 0 : steps;
    Vec2 m = background_vector(kind, pt, b, t);
    Vec2 s = with_dxi ? background_vector_dxi(kind, pt, b, t) : Vec2{};
    sol.m[static_cast<std::size_t>(node)] = m;
    if (with_dxi) sol.dm[static_cast<std::size_t>(node)] = s;

    for (int k = 0; k < steps; ++k) {
        const int next = left ? node + 1 : node - 1;
        // field samples at the step ends and midpoint
        const Complex u0 = u[static_cast<std::size_t>(2 * node)];
        const Complex um = u[static_cast<std::size_t>(node + next)];  // 2*node ± 1
        const Complex u1 = u[static_cast<std::size_t>(2 * next)];

        const Vec2 k1 = rhs.apply(u0, m);
        const Vec2 k2 = rhs.apply(um, m + (0.5 * h) * k1);
        const Vec2 k3 = rhs.apply(um, m + (0.5 * h) * k2);
        const Vec2 k4 = rhs.apply(u1, m + h * k3);

        if (with_dxi) {
            const Vec2 s1 = aug.apply_d(m, s, u0);
            const Vec2 s2 = aug.apply_d(m + (0.5 * h) * k1, s + (0.5 * h) * s1, um);
            const Vec2 s3 = aug.apply_d(m + (0.5 * h) * k2, s + (0.5 * h) * s2, um);
            const Vec2 s4 = aug.apply_d(m + h * k3, s + h * s3, u1);
            s += (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        }
        m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        node = next;
        sol.m[static_cast<std::size_t>(node)] = m;
        if (with_dxi) sol.dm[static_cast<std::size_t>(node)] = s;

        if ((k & 63) == 0 && (m.norm() > opts.overflow_guard || (with_dxi && s.norm() > opts.overflow_guard)))
            throw IntegrationDiverged("jost_column: conditioned norm exceeded overflow guard");
    }
    return sol;
}

ColumnEndpoint jost_column_endpoint(const PotentialField& field, const SpectralPoint& pt,
                                    ColumnKind kind, int stop_node, bool with_dxi,
                                    const ScatteringOptions& opts) {
    const Grid& fg = field.grid();
    const int steps = (fg.n - 1) / 2;
    if (stop_node < 0 || stop_node > steps) throw GridMismatch("jost_column_endpoint: stop node outside grid");
    const BoundaryData& b = field.boundary();
    const bool left = starts_left(kind);
    const double cond = side_sign(kind);

    Rhs rhs;
    const Complex shift = -cond * kI * pt.p;
    rhs.d1 = -kI * pt.xi + shift;
    rhs.d2 = kI * pt.xi + shift;
    RhsAug aug;
    aug.base = rhs;
    const Complex dshift = -cond * kI * (pt.xi / pt.p);
    aug.p1 = -kI + dshift;
    aug.p2 = kI + dshift;

    const double h = left ? 2.0 * fg.dx : -2.0 * fg.dx;
    const auto& u = field.samples();

    int node = left ? 0 : steps;
    const int span = left ? stop_node : steps - stop_node;
    Vec2 m = background_vector(kind, pt, b, field.time());
    Vec2 s = with_dxi ? background_vector_dxi(kind, pt, b, field.time()) : Vec2{};

    for (int k = 0; k < span; ++k) {
        const int next = left ? node + 1 : node - 1;
        const Complex u0 = u[static_cast<std::size_t>(2 * node)];
        const Complex um = u[static_cast<std::size_t>(node + next)];
        const Complex u1 = u[static_cast<std::size_t>(2 * next)];

        const Vec2 k1 = rhs.apply(u0, m);
        const Vec2 k2 = rhs.apply(um, m + (0.5 * h) * k1);
        const Vec2 k3 = rhs.apply(um, m + (0.5 * h) * k2);
        const Vec2 k4 = rhs.apply(u1, m + h * k3);
        if (with_dxi) {
            const Vec2 s1 = aug.apply_d(m, s, u0);
            const Vec2 s2 = aug.apply_d(m + (0.5 * h) * k1, s + (0.5 * h) * s1, um);
            const Vec2 s3 = aug.apply_d(m + (0.5 * h) * k2, s + (0.5 * h) * s2, um);
            const Vec2 s4 = aug.apply_d(m + h * k3, s + h * s3, u1);
            s += (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        }
        m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        node = next;
        if ((k & 63) == 0 && m.norm() > opts.overflow_guard)
            throw IntegrationDiverged("jost_column_endpoint: conditioned norm exceeded overflow guard");
    }
    return {m, s};
}

JostBundle jost_left(const PotentialField& field, const SpectralPoint& pt, const ScatteringOptions& opts) {
    JostBundle b;
    b.point = pt;
    b.left = true;
    b.phi_or_psi = jost_column(field, pt, ColumnKind::Phi, false, opts);
    if (pt.sheet == Sheet::ContinuousSpectrum)
        b.bar = jost_column(field, pt, ColumnKind::PhiBar, false, opts);
    return b;
}

JostBundle jost_right(const PotentialField& field, const SpectralPoint& pt, const ScatteringOptions& opts) {
    JostBundle b;
    b.point = pt;
    b.left = false;
    b.phi_or_psi = jost_column(field, pt, ColumnKind::Psi, false, opts);
    if (pt.sheet == Sheet::ContinuousSpectrum)
        b.bar = jost_column(field, pt, ColumnKind::PsiBar, false, opts);
    return b;
}

}  // namespace nls
