#ifndef NLS_GLM_HPP
#define NLS_GLM_HPP

#include <vector>

#include "nls/potential.hpp"
#include "nls/quadrature.hpp"
#include "nls/scattering_data.hpp"
#include "nls/spectral.hpp"

namespace nls {

// Inverse problem: kernels
//   F1(s) = rho e^{i a+ - 2 i rho^2 t}/(4 pi i) int b/(z a) e(s,z) dz
//           - 1/2 sum c_n rho e^{-i a+ + 2 i rho^2 t} / (a_dot(z_n) z_n) e(s,z_n)
//   F2(s) = 1/(4 pi)  int b/a e(s,z) dz - 1/2 sum i c_n / a_dot(z_n) e(s,z_n)
// with e(s,z) = exp[(i/2)(z - rho^2/z) s] and a_dot taken in the z variable,
// then the integral equation
//   K(x,y) + F(x+y) + int_x^inf K(x,s) F(s+y) ds = 0,  y >= x,
// solved row-wise by a dense Nystrom discretization with trapezoid weights
// on a graded y grid, and the recovery 2 K21(x,x) = rho e^{i a+ - 2i rho^2 t} - u.

enum class KernelPhase { AsPrinted, ConjugateContinuous };

struct GlmOptions {
    double tail_cutoff = 1e-10;   // |F| at x+Y must fall below this
    double min_tail = 8.0;        // lower bound on Y in units of 1/nu
    int base_panels = 192;        // Nystrom panels at the coarse level
    bool richardson = true;       // extrapolate K21(x,x) from two levels
    double cond_limit = 1e12;
    // The continuous part of F1 carries the same background phase as the
    // discrete sum (the conjugate of the phase printed on the integral);
    // with the printed phase the reconstructed field fails to return to the
    // background modulus whenever the integral term is nonzero. The two
    // coincide for reflectionless and inversion-even reflection data.
    KernelPhase phase = KernelPhase::ConjugateContinuous;
    // Treat max |r| at or below this as r == 0. Matches the |b| noise floor
    // of the direct solver on reflectionless potentials; synthetic or real
    // reflection sits orders of magnitude above it.
    double reflectionless_tol = 2e-7;
    double tab_dx = 2e-3;             // tabulation step of the continuous part
};

class MarchenkoKernel {
  public:
    MarchenkoKernel(const ScatteringData& sd, double t, double s_min, double s_max,
                    const GlmOptions& opts = {});

    Complex F1(double s) const;
    Complex F2(double s) const;

    bool reflectionless() const { return !has_cont_; }
    double nu_min() const { return nu_min_; }
    const BoundaryData& boundary() const { return boundary_; }
    double time() const { return time_; }
    // Smallest s with max(|F1|,|F2|) below the cutoff for all s' >= s.
    double decay_point(double cutoff) const;
    double s_min() const { return s_min_; }
    double s_max() const { return s_max_; }

  private:
    struct DiscreteTerm {
        double nu = 0.0;
        Complex coef1{}, coef2{};
    };

    BoundaryData boundary_;
    double time_ = 0.0;
    double nu_min_ = 0.0;
    double s_min_ = 0.0, s_max_ = 0.0;
    std::vector<DiscreteTerm> disc_;
    bool has_cont_ = false;
    CubicSpline cont1_, cont2_;
};

MarchenkoKernel marchenko_kernels(const ScatteringData& sd, double t, double s_min, double s_max,
                                  const GlmOptions& opts = {});

// Graded Nystrom grid on [x, x+Y]: logarithmic near x (kernel mass), linear
// tail; nodes nest under panel doubling.
struct YGrid {
    std::vector<double> y;  // absolute positions, y[0] = x
    std::vector<double> w;  // trapezoid weights of the mapped rule
};
YGrid build_y_grid(double x, double Y, double nu, int panels);

struct MarchenkoSolution {
    double x = 0.0;
    std::vector<double> y, w;        // fine-level nodes and weights
    std::vector<Vec2> row1, row2;    // (K11, K12), (K21, K22) on the nodes
    Complex K21_diag{};              // value at y = x (extrapolated if enabled)
    double residual = 0.0;           // max defect of the discretized equation
    double cond_estimate = 0.0;
    double tail_kernel_norm = 0.0;   // |K| at the last node
};

MarchenkoSolution solve_marchenko_at_x(const MarchenkoKernel& kernel, double x, double Y,
                                       const GlmOptions& opts = {});

Complex recover_potential(const MarchenkoSolution& solution, const BoundaryData& boundary, double t);

// Map solve + recover over an x grid (OpenMP; serial twin for tests).
PotentialField reconstruct_field(const ScatteringData& sd_t, double t, const Grid& x_grid,
                                 const GlmOptions& opts = {}, double boundary_tol = 1e-4);
PotentialField reconstruct_field_serial(const ScatteringData& sd_t, double t, const Grid& x_grid,
                                        const GlmOptions& opts = {}, double boundary_tol = 1e-4);

// psi(x, z, t) rebuilt from the kernel rows; cross-check against jost_right.
Vec2 jost_via_representation(const MarchenkoSolution& solution, const MarchenkoKernel& kernel,
                             Complex z);

}  // namespace nls

#endif
