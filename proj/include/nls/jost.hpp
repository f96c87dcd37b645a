#ifndef NLS_JOST_HPP
#define NLS_JOST_HPP

#include <optional>
#include <vector>

#include "nls/potential.hpp"
#include "nls/spectral.hpp"

namespace nls {

// Jost solutions of the first-order system
//   f1' = -i xi f1 + u* f2,   f2' = u f1 + i xi f2
// fixed by their plane-wave asymptotics. The integrator works on the
// conditioned variable m with f = m * exp(cond * i p x), which stays O(1)
// both on the continuous spectrum and at gap points, and steps a classical
// fixed-step RK4 with h = 2*dx (midpoint samples come from the odd field
// indices). Removed exponential factors are recorded so raw values can be
// reconstructed on demand.

enum class ColumnKind { Phi, PhiBar, Psi, PsiBar };

struct ScatteringOptions {
    double x_match = 0.0;        // Wronskian matching point
    int scan_points = 2001;      // eigenvalue scan density over the gap
    double scan_margin = 1e-6;   // relative inset of the scan grid from +-rho
    double newton_tol = 1e-12;
    int max_newton = 50;
    double abs_a_tol = 1e-10;    // |a(xi_n)| at convergence
    double collision_tol = 1e-7; // relative eigenvalue separation
    double branch_margin = kBranchMargin;
    double overflow_guard = 1e120;
};

struct JostSolution {
    Grid sgrid;                  // step grid (spacing 2*dx of the field)
    SpectralPoint point;
    double cond = 0.0;           // f = m * exp(cond * i p x)
    std::vector<Vec2> m;
    std::vector<Vec2> dm;        // d/dxi of m when integrated augmented

    bool has_dxi() const { return !dm.empty(); }
    Complex factor(int i) const { return std::exp(cond * kI * point.p * sgrid.x(i)); }
    Vec2 raw(int i) const { return m[static_cast<std::size_t>(i)] * factor(i); }
    // d/dxi of the raw column, including the xi-dependence of the
    // conditioning exponent (dp/dxi = xi/p).
    Vec2 raw_dxi(int i) const;
};

// Spec-facing bundle: left columns (phi, phi_bar) or right columns
// (psi, psi_bar). The bar columns are only formed on the continuous
// spectrum, where they follow from the involution sigma1 * conj.
struct JostBundle {
    SpectralPoint point;
    JostSolution phi_or_psi;           // phi for the left bundle, psi for the right
    std::optional<JostSolution> bar;   // phi_bar / psi_bar
    bool left = true;
};

JostSolution jost_column(const PotentialField& field, const SpectralPoint& point, ColumnKind kind,
                         bool with_dxi = false, const ScatteringOptions& opts = {});

// Integrate only as far as step node stop_node and return the conditioned
// endpoint values; no per-node storage. Used by the grid scans.
struct ColumnEndpoint {
    Vec2 m, dm;
};
ColumnEndpoint jost_column_endpoint(const PotentialField& field, const SpectralPoint& point,
                                    ColumnKind kind, int stop_node, bool with_dxi = false,
                                    const ScatteringOptions& opts = {});

JostBundle jost_left(const PotentialField& field, const SpectralPoint& point,
                     const ScatteringOptions& opts = {});
JostBundle jost_right(const PotentialField& field, const SpectralPoint& point,
                      const ScatteringOptions& opts = {});

// det f = 2 p (xi - p) / rho^2 for the normalized solution matrices.
Complex jost_det_normalization(const SpectralPoint& point, const BoundaryData& boundary);

// Asymptotic column vectors of the background problem (no exponential).
Vec2 background_vector(ColumnKind kind, const SpectralPoint& point, const BoundaryData& boundary,
                       double time);
Vec2 background_vector_dxi(ColumnKind kind, const SpectralPoint& point, const BoundaryData& boundary,
                           double time);

}  // namespace nls

#endif
