#ifndef NLS_TIME_FUNCTION_HPP
#define NLS_TIME_FUNCTION_HPP

#include <utility>
#include <vector>

#include "nls/types.hpp"

namespace nls {

// Complex-valued function of time: either a constant or a tabulated series
// with linear interpolation. Tables must cover the query range.
class TimeFunction {
  public:
    TimeFunction() : constant_(0.0), is_const_(true) {}
    explicit TimeFunction(Complex c) : constant_(c), is_const_(true) {}
    explicit TimeFunction(std::vector<std::pair<double, Complex>> table);

    static TimeFunction zero() { return TimeFunction(Complex(0.0)); }

    bool is_constant() const { return is_const_; }
    Complex operator()(double t) const;

    // Composite trapezoid of integrand(f(tau)) over [0, t], with the panel
    // count refined to at least min_panels. Tabulated functions must cover
    // [0, t] with at least two samples.
    template <typename F>
    Complex integrate(double t, F&& integrand, int min_panels = 200) const {
        if (t == 0.0) return Complex(0.0);
        if (!is_const_ &&
            (table_.size() < 2 || table_.front().first > 1e-12 || table_.back().first < t - 1e-12))
            throw QuadratureUnderResolved("TimeFunction: tabulated samples do not cover [0, t]");
        const int panels = std::max(min_panels, 2 * static_cast<int>(table_.size()));
        const double h = t / panels;
        Complex s = 0.5 * (integrand((*this)(0.0)) + integrand((*this)(t)));
        for (int i = 1; i < panels; ++i) s += integrand((*this)(h * i));
        return s * h;
    }

  private:
    Complex constant_{};
    bool is_const_ = true;
    std::vector<std::pair<double, Complex>> table_;
};

}  // namespace nls

#endif
