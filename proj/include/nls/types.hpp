#ifndef NLS_TYPES_HPP
#define NLS_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nls {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// ---------------------------------------------------------------------------
// Error hierarchy. All numerical failure modes carry a named type so callers
// (and the CLI) can map them to exit classes.
// ---------------------------------------------------------------------------
struct NlsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : NlsError { using NlsError::NlsError; };
struct ParseError : NlsError { using NlsError::NlsError; };
struct GridMismatch : NlsError { using NlsError::NlsError; };

struct BranchPointError : NlsError { using NlsError::NlsError; };
struct SheetMismatch : NlsError { using NlsError::NlsError; };
struct InconsistentPair : NlsError { using NlsError::NlsError; };
struct OriginError : NlsError { using NlsError::NlsError; };

struct BoundaryMismatch : NlsError { using NlsError::NlsError; };
struct IntegrationDiverged : NlsError { using NlsError::NlsError; };
struct NoConvergence : NlsError { using NlsError::NlsError; };
struct DoubleRootSuspected : NlsError { using NlsError::NlsError; };
struct ProportionalityViolation : NlsError { using NlsError::NlsError; };
struct DerivativeDegenerate : NlsError { using NlsError::NlsError; };

struct ArityMismatch : NlsError { using NlsError::NlsError; };
struct QuadratureUnderResolved : NlsError { using NlsError::NlsError; };

struct KernelDivergence : NlsError { using NlsError::NlsError; };
struct SingularSystem : NlsError { using NlsError::NlsError; };
struct TailTooShort : NlsError { using NlsError::NlsError; };
struct DegenerateOverlap : NlsError { using NlsError::NlsError; };
struct ConstraintViolation : NlsError { using NlsError::NlsError; };

// ---------------------------------------------------------------------------
// Uniform spatial grid x_i = x0 + i*dx, i = 0..n-1.
// ---------------------------------------------------------------------------
struct Grid {
    double x0 = 0.0;
    double dx = 0.0;
    int n = 0;

    Grid() = default;
    Grid(double x0_, double dx_, int n_) : x0(x0_), dx(dx_), n(n_) {
        if (!(dx > 0.0)) throw ValidationError("Grid: dx must be positive");
        if (n < 2) throw ValidationError("Grid: need at least two points");
    }
    static Grid symmetric(double half_width, int points) {
        if (points < 3) throw ValidationError("Grid: need at least three points");
        return Grid(-half_width, 2.0 * half_width / (points - 1), points);
    }

    double x(int i) const { return x0 + dx * i; }
    double back() const { return x(n - 1); }
    int index_near(double x_target) const {
        int i = static_cast<int>(std::lround((x_target - x0) / dx));
        if (i < 0) i = 0;
        if (i >= n) i = n - 1;
        return i;
    }
    bool operator==(const Grid&) const = default;
};

inline double wrap_phase(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

// ---------------------------------------------------------------------------
// Nonzero boundary conditions: u -> rho*exp(i*alpha_pm - 2i*rho^2 t) as
// x -> +-inf. Phases are stored wrapped to [0, 2pi); theta is derived.
// ---------------------------------------------------------------------------
struct BoundaryData {
    double rho = 1.0;
    double alpha_minus = 0.0;
    double alpha_plus = 0.0;

    BoundaryData() = default;
    BoundaryData(double rho_, double alpha_minus_, double alpha_plus_)
        : rho(rho_), alpha_minus(wrap_phase(alpha_minus_)), alpha_plus(wrap_phase(alpha_plus_)) {
        if (!(rho > 0.0)) throw ValidationError("BoundaryData: rho must be positive");
    }

    double theta() const { return alpha_plus - alpha_minus; }
    // phase of the background at time t
    double mu_minus(double t) const { return alpha_minus - 2.0 * rho * rho * t; }
    double mu_plus(double t) const { return alpha_plus - 2.0 * rho * rho * t; }
    Complex u_left(double t) const { return rho * std::exp(kI * mu_minus(t)); }
    Complex u_right(double t) const { return rho * std::exp(kI * mu_plus(t)); }
};

inline double rel_err(Complex got, Complex want) {
    double scale = std::max(1e-300, std::abs(want));
    return std::abs(got - want) / scale;
}

// 2-vector over Complex; column of the first-order spectral system.
struct Vec2 {
    Complex a{}, b{};

    Vec2() = default;
    Vec2(Complex a_, Complex b_) : a(a_), b(b_) {}

    Vec2 operator+(const Vec2& o) const { return {a + o.a, b + o.b}; }
    Vec2 operator-(const Vec2& o) const { return {a - o.a, b - o.b}; }
    Vec2 operator*(Complex s) const { return {a * s, b * s}; }
    Vec2& operator+=(const Vec2& o) { a += o.a; b += o.b; return *this; }
    double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};
inline Vec2 operator*(Complex s, const Vec2& v) { return v * s; }
inline Complex det2(const Vec2& u, const Vec2& v) { return u.a * v.b - u.b * v.a; }
inline Vec2 sigma1(const Vec2& v) { return {v.b, v.a}; }
inline Vec2 sigma3(const Vec2& v) { return {v.a, -v.b}; }
inline Vec2 conj(const Vec2& v) { return {std::conj(v.a), std::conj(v.b)}; }

}  // namespace nls

#endif
