#include "nls/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nls/parallel.hpp"
#include "nls/quadrature.hpp"

namespace nls {

namespace {

int match_node(const PotentialField& field, double x_match) {
    const Grid& fg = field.grid();
    const int steps = (fg.n - 1) / 2;
    const Grid sgrid(fg.x0, 2.0 * fg.dx, steps + 1);
    return sgrid.index_near(x_match);
}

Grid step_grid(const PotentialField& field) {
    const Grid& fg = field.grid();
    return Grid(fg.x0, 2.0 * fg.dx, (fg.n - 1) / 2 + 1);
}

// dD/dxi for D = 2 p (xi - p) / rho^2
Complex det_normalization_dxi(const SpectralPoint& pt, const BoundaryData& b) {
    return 2.0 * (pt.xi - pt.p) * (pt.xi - pt.p) / (pt.p * b.rho * b.rho);
}

struct ABPair {
    Complex a{}, a_dot{};
};

// a (and optionally da/dxi) from endpoint integrations meeting at the match node.
ABPair a_and_derivative(const PotentialField& field, const SpectralPoint& pt, int j, bool deriv,
                        const ScatteringOptions& opts) {
    const auto L = jost_column_endpoint(field, pt, ColumnKind::Phi, j, deriv, opts);
    const auto R = jost_column_endpoint(field, pt, ColumnKind::Psi, j, deriv, opts);
    const Complex D = jost_det_normalization(pt, field.boundary());
    ABPair out;
    out.a = det2(L.m, R.m) / D;
    if (deriv) {
        const double xj = step_grid(field).x(j);
        const Complex drift = kI * (pt.xi / pt.p) * xj;
        // raw-derivative columns with the conditioning drift restored; the
        // exponential factors cancel inside each determinant
        const Vec2 dphi = L.dm - drift * L.m;
        const Vec2 dpsi = R.dm + drift * R.m;
        const Complex sum = det2(dphi, R.m) + det2(L.m, dpsi);
        out.a_dot = sum / D - out.a * det_normalization_dxi(pt, field.boundary()) / D;
    }
    return out;
}

}  // namespace

CoefficientResult scattering_coefficients(const PotentialField& field, const SpectralPoint& pt,
                                          const ScatteringOptions& opts, bool with_derivative) {
    const int j = match_node(field, opts.x_match);
    const auto L = jost_column_endpoint(field, pt, ColumnKind::Phi, j, with_derivative, opts);
    const auto R = jost_column_endpoint(field, pt, ColumnKind::Psi, j, with_derivative, opts);
    const Complex D = jost_det_normalization(pt, field.boundary());

    CoefficientResult res;
    res.a = det2(L.m, R.m) / D;
    if (pt.sheet == Sheet::ContinuousSpectrum) {
        // psi_bar = sigma1 psi* on the continuous spectrum
        const double xj = step_grid(field).x(j);
        const Vec2 psi_bar_m = sigma1(conj(R.m));
        const Complex osc = std::exp(-2.0 * kI * pt.p * xj);
        res.b = det2(psi_bar_m, L.m) * osc / D;
    }
    if (with_derivative) {
        const double xj = step_grid(field).x(j);
        const Complex drift = kI * (pt.xi / pt.p) * xj;
        const Vec2 dphi = L.dm - drift * L.m;
        const Vec2 dpsi = R.dm + drift * R.m;
        const Complex sum = det2(dphi, R.m) + det2(L.m, dpsi);
        res.a_dot_xi = sum / D - res.a * det_normalization_dxi(pt, field.boundary()) / D;
    }
    return res;
}

std::vector<Complex> a_matching_samples(const PotentialField& field, const SpectralPoint& pt,
                                        const std::vector<double>& x_offsets,
                                        const ScatteringOptions& opts) {
    std::vector<Complex> out;
    out.reserve(x_offsets.size());
    for (double xm : x_offsets) {
        ScatteringOptions o = opts;
        o.x_match = xm;
        out.push_back(scattering_coefficients(field, pt, o).a);
    }
    return out;
}

namespace {

ScatteringData scattering_grid_impl(const PotentialField& field, const std::vector<double>& z_grid,
                                    const ScatteringOptions& opts, bool parallel) {
    const BoundaryData& b = field.boundary();
    for (double z : z_grid) {
        if (std::abs(std::abs(z) - b.rho) < opts.branch_margin * b.rho)
            throw BranchPointError("scattering_on_grid: node too close to |z| = rho: z = " + std::to_string(z));
        if (std::abs(z) < opts.branch_margin * b.rho)
            throw OriginError("scattering_on_grid: node too close to z = 0");
    }

    ScatteringData sd;
    sd.boundary = b;
    sd.time = field.time();
    sd.continuous.assign(z_grid.size(), ContinuousSample{});

    auto body = [&](int i) {
        const double z = z_grid[static_cast<std::size_t>(i)];
        try {
            const SpectralPoint pt = point_from_z(Complex(z, 0.0), b);
            const auto res = scattering_coefficients(field, pt, opts);
            ContinuousSample s;
            s.z = z;
            s.a = res.a;
            s.b = res.b.value_or(Complex(0.0));
            s.r = s.b / s.a;
            sd.continuous[static_cast<std::size_t>(i)] = s;
        } catch (const NlsError& e) {
            throw NlsError(std::string(e.what()) + " [at z = " + std::to_string(z) + "]");
        }
    };
    if (parallel)
        parallel_for(static_cast<int>(z_grid.size()), body);
    else
        serial_for(static_cast<int>(z_grid.size()), body);
    return sd;
}

}  // namespace

ScatteringData scattering_on_grid(const PotentialField& field, const std::vector<double>& z_grid,
                                  const ScatteringOptions& opts) {
    return scattering_grid_impl(field, z_grid, opts, true);
}

ScatteringData scattering_on_grid_serial(const PotentialField& field, const std::vector<double>& z_grid,
                                         const ScatteringOptions& opts) {
    return scattering_grid_impl(field, z_grid, opts, false);
}

namespace {

std::vector<double> find_eigenvalues_impl(const PotentialField& field, const ScatteringOptions& opts,
                                          bool parallel) {
    const BoundaryData& b = field.boundary();
    const double rho = b.rho;
    const double inset = std::max(opts.scan_margin, opts.branch_margin) * rho;
    const int n = opts.scan_points;
    if (n < 16) throw ValidationError("find_eigenvalues: scan grid too coarse");
    const int j = match_node(field, opts.x_match);

    std::vector<double> xi(n);
    for (int k = 0; k < n; ++k)
        xi[static_cast<std::size_t>(k)] = -rho + inset + (2.0 * rho - 2.0 * inset) * k / (n - 1);

    std::vector<Complex> av(n);
    auto body = [&](int k) {
        const SpectralPoint pt = gap_point(xi[static_cast<std::size_t>(k)], b);
        av[static_cast<std::size_t>(k)] = a_and_derivative(field, pt, j, false, opts).a;
    };
    if (parallel)
        parallel_for(n, body);
    else
        serial_for(n, body);

    std::vector<double> roots;
    for (int k = 0; k + 1 < n; ++k) {
        const Complex al = av[static_cast<std::size_t>(k)];
        const Complex ar = av[static_cast<std::size_t>(k + 1)];
        // simple zeros flip the phase of a across the crossing
        if ((al * std::conj(ar)).real() >= 0.0) continue;

        double lo = xi[static_cast<std::size_t>(k)], hi = xi[static_cast<std::size_t>(k + 1)];
        const Complex dir = ar - al;  // secant direction, defines the sign function
        double glo = (al * std::conj(dir)).real();
        double x = 0.5 * (lo + hi);
        bool converged = false;
        Complex a_here;
        for (int it = 0; it < opts.max_newton; ++it) {
            const SpectralPoint pt = gap_point(x, b);
            const auto ad = a_and_derivative(field, pt, j, true, opts);
            a_here = ad.a;
            if (std::abs(ad.a_dot) < 1e-300) break;
            const double step = (ad.a / ad.a_dot).real();
            double xn = x - step;
            if (!(xn > lo && xn < hi)) {
                // bisection fallback on the projected sign
                const double g = (ad.a * std::conj(dir)).real();
                if (g * glo > 0.0) { lo = x; glo = g; } else { hi = x; }
                xn = 0.5 * (lo + hi);
            } else {
                const double g = (ad.a * std::conj(dir)).real();
                if (g * glo > 0.0) lo = x; else hi = x;
            }
            const bool small_step = std::abs(xn - x) <= opts.newton_tol * std::max(1.0, std::abs(x));
            x = xn;
            if (small_step && std::abs(a_here) <= opts.abs_a_tol) { converged = true; break; }
        }
        if (!converged) {
            const SpectralPoint pt = gap_point(x, b);
            a_here = a_and_derivative(field, pt, j, false, opts).a;
            if (std::abs(a_here) > opts.abs_a_tol)
                throw NoConvergence("find_eigenvalues: root refinement failed in bracket [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        roots.push_back(x);
    }

    std::sort(roots.begin(), roots.end());
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (roots[i] - roots[i - 1] < opts.collision_tol * rho)
            throw DoubleRootSuspected("find_eigenvalues: refined roots collide near xi = " +
                                      std::to_string(roots[i]));
    return roots;
}

}  // namespace

std::vector<double> find_eigenvalues(const PotentialField& field, const ScatteringOptions& opts) {
    return find_eigenvalues_impl(field, opts, true);
}

std::vector<double> find_eigenvalues_serial(const PotentialField& field, const ScatteringOptions& opts) {
    return find_eigenvalues_impl(field, opts, false);
}

ADerivative a_derivative(const PotentialField& field, double xi_n, const ScatteringOptions& opts) {
    const SpectralPoint pt = gap_point(xi_n, field.boundary());
    const int j = match_node(field, opts.x_match);
    const auto ad = a_and_derivative(field, pt, j, true, opts);
    if (std::abs(ad.a) > 1e-6)
        throw ValidationError("a_derivative: xi_n is not an eigenvalue (|a| = " + std::to_string(std::abs(ad.a)) + ")");
    ADerivative out;
    out.dxi = ad.a_dot;
    const Complex dz_dxi = 1.0 + pt.xi / pt.p;
    out.dz = ad.a_dot / dz_dxi;
    return out;
}

EigenPair eigenfunction_pair(const PotentialField& field, double xi_n, const ScatteringOptions& opts) {
    const SpectralPoint pt = gap_point(xi_n, field.boundary());
    const JostSolution phi = jost_column(field, pt, ColumnKind::Phi, false, opts);
    const JostSolution psi = jost_column(field, pt, ColumnKind::Psi, false, opts);
    const int n = phi.sgrid.n;

    EigenPair pair;
    pair.sgrid = phi.sgrid;
    pair.phi.resize(static_cast<std::size_t>(n));
    pair.psi.resize(static_cast<std::size_t>(n));

    // peak of |psi| (raw): the conditioned norm times the removed factor
    int peak = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double v = psi.raw(i).norm();
        if (v > best) { best = v; peak = i; }
    }
    pair.peak_index = peak;

    const Vec2 fp = phi.raw(peak);
    const Vec2 sp = psi.raw(peak);
    const Complex ca = fp.a / sp.a;
    const Complex cb = fp.b / sp.b;
    const bool use_b = !(std::abs(sp.a) > std::abs(sp.b));  // tie goes to component 2
    pair.c_n = use_b ? cb : ca;
    if (std::abs(ca - cb) > 1e-6 * std::abs(pair.c_n))
        throw ProportionalityViolation("eigenfunction_pair: component ratios disagree; xi is not an eigenvalue");

    for (int i = 0; i < n; ++i) {
        // keep each column on its stable side of the peak
        pair.phi[static_cast<std::size_t>(i)] = i <= peak ? phi.raw(i) : pair.c_n * psi.raw(i);
        pair.psi[static_cast<std::size_t>(i)] = i >= peak ? psi.raw(i) : phi.raw(i) * (1.0 / pair.c_n);
    }
    return pair;
}

std::vector<Complex> norming_constants(const PotentialField& field, const std::vector<double>& eigenvalues,
                                       const ScatteringOptions& opts) {
    std::vector<Complex> out;
    out.reserve(eigenvalues.size());
    for (double xi : eigenvalues) out.push_back(eigenfunction_pair(field, xi, opts).c_n);
    return out;
}

SecondSolution second_solution(const PotentialField& field, double xi_n, Complex c_n,
                               const ScatteringOptions& opts) {
    const SpectralPoint pt = gap_point(xi_n, field.boundary());
    const JostSolution phi = jost_column(field, pt, ColumnKind::Phi, true, opts);
    const JostSolution psi = jost_column(field, pt, ColumnKind::Psi, true, opts);

    const auto ad = a_derivative(field, xi_n, opts);
    if (std::abs(ad.dxi) < 1e-12)
        throw DerivativeDegenerate("second_solution: |a_dot| below 1e-12");

    SecondSolution sol;
    sol.sgrid = phi.sgrid;
    sol.a_dot_xi = ad.dxi;
    const int n = phi.sgrid.n;
    sol.h.resize(static_cast<std::size_t>(n));
    const Complex inv = 1.0 / ad.dxi;
    for (int i = 0; i < n; ++i)
        sol.h[static_cast<std::size_t>(i)] = (phi.raw_dxi(i) - c_n * psi.raw_dxi(i)) * inv;
    return sol;
}

ScatteringData direct_scattering(const PotentialField& field, const std::vector<double>& z_grid,
                                 const ScatteringOptions& opts) {
    ScatteringData sd = scattering_on_grid(field, z_grid, opts);
    sd.eigenvalues = find_eigenvalues(field, opts);
    sd.norming = norming_constants(field, sd.eigenvalues, opts);
    for (double xi : sd.eigenvalues) {
        const auto ad = a_derivative(field, xi, opts);
        sd.a_dot_xi.push_back(ad.dxi);
        sd.a_dot_z.push_back(ad.dz);
    }
    return sd;
}

// ---------------------------------------------------------------------------
// Trace formula
// ---------------------------------------------------------------------------

namespace {

// continuous samples split at the sign flip of z into the two real intervals
std::pair<std::size_t, std::size_t> interval_split(const ScatteringData& sd) {
    std::size_t flip = sd.continuous.size();
    for (std::size_t i = 1; i < sd.continuous.size(); ++i)
        if (sd.continuous[i - 1].z < 0.0 && sd.continuous[i].z > 0.0) { flip = i; break; }
    return {flip, sd.continuous.size()};
}

double log_one_minus_r2(const ContinuousSample& s) {
    const double v = 1.0 - std::norm(s.r);
    return std::log(std::max(v, 1e-300));
}

}  // namespace

TraceFormulaResult trace_formula_check(const ScatteringData& sd, int sample_stride) {
    TraceFormulaResult res;
    const auto [flip, total] = interval_split(sd);
    if (total < 8) throw ValidationError("trace_formula_check: too few continuous samples");

    for (const auto& s : sd.continuous)
        if (std::abs(s.r) > 0.99) res.quadrature_warning = true;

    std::vector<double> L(total);
    for (std::size_t i = 0; i < total; ++i) L[i] = log_one_minus_r2(sd.continuous[i]);

    auto blaschke = [&](Complex z) {
        Complex prod(1.0, 0.0);
        for (std::size_t k = 0; k < sd.n_eigen(); ++k) {
            const Complex zk = sd.z_n(k);
            prod *= (z - zk) / (z - std::conj(zk));
        }
        return prod;
    };

    // per-interval nodes and weights
    auto interval_nodes = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> nodes(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) nodes[i - lo] = sd.continuous[i].z;
        return nodes;
    };
    const std::vector<double> neg_nodes = interval_nodes(0, flip);
    const std::vector<double> pos_nodes = interval_nodes(flip, total);
    const std::vector<double> neg_w = neg_nodes.size() > 1 ? trapezoid_weights(neg_nodes) : std::vector<double>{};
    const std::vector<double> pos_w = pos_nodes.size() > 1 ? trapezoid_weights(pos_nodes) : std::vector<double>{};

    // PV of int L(zeta)/(zeta - z) dzeta when z is the grid node at index iz
    auto pv_integral = [&](std::size_t iz) {
        const double z = sd.continuous[iz].z;
        const double Lz = L[iz];
        double acc = 0.0;
        auto add_interval = [&](const std::vector<double>& nodes, const std::vector<double>& w, std::size_t base,
                                bool contains) {
            if (nodes.size() < 2) return;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const std::size_t gi = base + i;
                double integrand;
                if (contains && gi == iz) {
                    // slope of L at the singular node
                    const std::size_t il = gi > base ? gi - 1 : gi;
                    const std::size_t ir = gi + 1 < base + nodes.size() ? gi + 1 : gi;
                    integrand = (L[ir] - L[il]) / (sd.continuous[ir].z - sd.continuous[il].z);
                } else if (contains) {
                    integrand = (L[gi] - Lz) / (nodes[i] - z);
                } else {
                    integrand = L[gi] / (nodes[i] - z);
                }
                acc += w[i] * integrand;
            }
            if (contains) acc += Lz * std::log(std::abs((nodes.back() - z) / (z - nodes.front())));
        };
        const bool in_neg = iz < flip;
        add_interval(neg_nodes, neg_w, 0, in_neg);
        add_interval(pos_nodes, pos_w, flip, !in_neg);
        return acc;
    };

    // formula vs stored a on a node subsample
    double max_err = 0.0;
    int count = 0;
    const double pi = 3.141592653589793238462643383279;
    for (std::size_t i = 0; i < total; i += static_cast<std::size_t>(std::max(1, sample_stride))) {
        const double pv = pv_integral(i);
        // boundary value from above: W = -(1/2pi i) [PV + i pi L(z)]
        const Complex W(-L[i] / 2.0, pv / (2.0 * pi));
        const Complex a_formula = blaschke(Complex(sd.continuous[i].z, 0.0)) * std::exp(W);
        max_err = std::max(max_err, rel_err(a_formula, sd.continuous[i].a));
        ++count;
    }
    res.max_rel_err_a = max_err;
    res.samples = count;

    // z -> 0 limit against e^{-i theta}
    Complex int_over_zeta(0.0);
    auto add_plain = [&](const std::vector<double>& nodes, const std::vector<double>& w, std::size_t base) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            int_over_zeta += w[i] * L[base + i] / nodes[i];
    };
    if (!neg_w.empty()) add_plain(neg_nodes, neg_w, 0);
    if (!pos_w.empty()) add_plain(pos_nodes, pos_w, flip);

    Complex prod0(1.0, 0.0);
    for (std::size_t k = 0; k < sd.n_eigen(); ++k) prod0 *= sd.z_n(k) / std::conj(sd.z_n(k));
    res.theta_rhs = prod0 * std::exp(-int_over_zeta / (2.0 * pi * kI));
    res.theta_lhs = std::exp(-kI * sd.boundary.theta());
    res.theta_residual = std::abs(res.theta_lhs - res.theta_rhs);
    return res;
}

}  // namespace nls
