#ifndef NLS_QUADRATURE_HPP
#define NLS_QUADRATURE_HPP

#include <vector>

#include "nls/types.hpp"

namespace nls {

// Trapezoid weights for an arbitrary strictly increasing node set.
std::vector<double> trapezoid_weights(const std::vector<double>& nodes);

// ---------------------------------------------------------------------------
// Natural cubic spline on a strictly increasing node set, complex values.
// Out-of-range queries clamp to the end values (callers keep arguments in
// range; clamping avoids wild extrapolation on roundoff overshoot).
// ---------------------------------------------------------------------------
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<Complex> y);

    Complex operator()(double x) const;
    bool empty() const { return x_.empty(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    std::vector<double> x_;
    std::vector<Complex> y_;
    std::vector<Complex> m_;  // second derivatives
};

}  // namespace nls

#endif
