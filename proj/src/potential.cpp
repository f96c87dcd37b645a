#include "nls/potential.hpp"

#include <cmath>

namespace nls {

PotentialField::PotentialField(Grid grid, std::vector<Complex> u, BoundaryData boundary, double time,
                               double boundary_tol)
    : grid_(grid), u_(std::move(u)), boundary_(boundary), time_(time) {
    if (static_cast<int>(u_.size()) != grid_.n)
        throw GridMismatch("PotentialField: sample count does not match grid");
    if ((grid_.n - 1) % 2 != 0)
        throw ValidationError("PotentialField: grid needs an even interval count");
    const double dl = std::abs(u_.front() - boundary_.u_left(time_));
    const double dr = std::abs(u_.back() - boundary_.u_right(time_));
    if (dl > boundary_tol * boundary_.rho || dr > boundary_tol * boundary_.rho)
        throw BoundaryMismatch("PotentialField: edge samples are not within boundary tolerance of the plane-wave limits");

    std::vector<double> xs(static_cast<std::size_t>(grid_.n));
    for (int i = 0; i < grid_.n; ++i) xs[static_cast<std::size_t>(i)] = grid_.x(i);
    spline_ = std::make_shared<const CubicSpline>(std::move(xs), u_);
}

PotentialField PotentialField::sample(const std::function<Complex(double)>& u_of_x, Grid grid,
                                      BoundaryData boundary, double time, double boundary_tol) {
    std::vector<Complex> u(grid.n);
    for (int i = 0; i < grid.n; ++i) u[static_cast<std::size_t>(i)] = u_of_x(grid.x(i));
    return PotentialField(grid, std::move(u), boundary, time, boundary_tol);
}

Complex PotentialField::value(double x) const {
    if (x <= grid_.x0) return boundary_.u_left(time_);
    if (x >= grid_.back()) return boundary_.u_right(time_);
    return (*spline_)(x);
}

PotentialField PotentialField::resample(Grid target, double boundary_tol) const {
    std::vector<Complex> u(static_cast<std::size_t>(target.n));
    for (int i = 0; i < target.n; ++i) u[static_cast<std::size_t>(i)] = value(target.x(i));
    return PotentialField(target, std::move(u), boundary_, time_, boundary_tol);
}

}  // namespace nls
