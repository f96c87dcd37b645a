#ifndef NLS_POTENTIAL_HPP
#define NLS_POTENTIAL_HPP

#include <functional>
#include <memory>
#include <vector>

#include "nls/quadrature.hpp"
#include "nls/types.hpp"

namespace nls {

// Complex field u on a uniform grid at a fixed time, together with its
// boundary data. Construction checks that the sampled edges sit within
// boundary_tol of the plane-wave limits rho*exp(i*alpha_pm - 2i*rho^2 t).
//
// The scattering integrator steps with h = 2*dx and reads midpoint samples
// from the odd indices, so grids are built with an even interval count.
class PotentialField {
  public:
    PotentialField(Grid grid, std::vector<Complex> u, BoundaryData boundary, double time,
                   double boundary_tol = 1e-6);

    static PotentialField sample(const std::function<Complex(double)>& u_of_x, Grid grid,
                                 BoundaryData boundary, double time, double boundary_tol = 1e-6);

    const Grid& grid() const { return grid_; }
    const std::vector<Complex>& samples() const { return u_; }
    const BoundaryData& boundary() const { return boundary_; }
    double time() const { return time_; }

    Complex operator[](int i) const { return u_[static_cast<std::size_t>(i)]; }
    // Spline evaluation at arbitrary x, clamped to the plane-wave limits
    // outside the grid. The spline is built at construction, so fields are
    // immutable values and safe to share across threads.
    Complex value(double x) const;

    // Resample onto a finer uniform grid (spline interior, plane-wave limits
    // outside the source extent).
    PotentialField resample(Grid target, double boundary_tol = 1e-4) const;

  private:
    Grid grid_;
    std::vector<Complex> u_;
    BoundaryData boundary_;
    double time_ = 0.0;
    std::shared_ptr<const CubicSpline> spline_;
};

}  // namespace nls

#endif
