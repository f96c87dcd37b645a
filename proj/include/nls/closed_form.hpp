#ifndef NLS_CLOSED_FORM_HPP
#define NLS_CLOSED_FORM_HPP

#include <vector>

#include "nls/scattering_data.hpp"
#include "nls/time_function.hpp"
#include "nls/types.hpp"

namespace nls {

// Exact one-soliton family on a plane-wave background together with its
// scattering data and the paired source eigenfunctions, used as ground truth
// by the tests and the `example` CLI command.
//
// The family is parameterized by rho > nu > 0, c > 0 and the two boundary
// phases. The scattering data a(z) = (z - z1)/(z - z1*) with z1 = zeta + i nu
// forces a(0) = z1/z1* = e^{-i theta}, so the phases are mutually consistent
// only when theta = -2*atan(nu/zeta) mod 2pi; matched_alpha_plus() returns
// the phase that satisfies this. With mismatched phases the field and the
// data no longer describe the same potential (the field degenerates to a
// constant at theta = 0, c = 1).
struct ExampleParams {
    double rho = 1.0;
    double nu = 0.6;
    double c = 1.0;
    double alpha_minus = 0.0;
    double alpha_plus = 0.0;

    ExampleParams(double rho_, double nu_, double c_, double alpha_minus_, double alpha_plus_);

    // Construct with alpha_plus set to the phase matched to (rho, nu).
    static ExampleParams consistent(double rho, double nu, double c, double alpha_minus);

    double zeta() const { return std::sqrt(rho * rho - nu * nu); }
    Complex z1() const { return {zeta(), nu}; }
    BoundaryData boundary() const { return {rho, alpha_minus, alpha_plus}; }
};

double matched_alpha_plus(double alpha_minus, double rho, double nu);

// u0(x) = rho (e^{i a+} e^{nu x} + c e^{i a-} e^{-nu x}) / (e^{nu x} + c e^{-nu x})
Complex example_initial(double x, const ExampleParams& p);

// Evolved field with soliton drift 4*zeta*nu*t - g(t) in the exponent.
Complex example_u(double x, double t, const ExampleParams& p, double g);

// a(z) = (z - z1)/(z - z1*)
Complex example_a(Complex z, const ExampleParams& p);
Complex example_a_dot_z(const ExampleParams& p);   // at z1
Complex example_a_dot_xi(const ExampleParams& p);  // at xi1 = zeta
Complex example_c1(double t, const ExampleParams& p, double g);

// Source data for the two admissible cases.
struct ExampleSourceA {
    TimeFunction A1 = TimeFunction::zero();
    TimeFunction alpha1 = TimeFunction(Complex(1.0));  // free gauge
};
struct ExampleSourceB {
    TimeFunction beta1 = TimeFunction::zero();
    TimeFunction B1 = TimeFunction(Complex(1.0));  // real valued
};

double example_g_case_a(const ExampleSourceA& src, double t);
double example_g_case_b(const ExampleSourceB& src, double t);

ScatteringData example_scattering_case_a(const ExampleParams& p, double t, const ExampleSourceA& src,
                                         const std::vector<double>& z_grid);
ScatteringData example_scattering_case_b(const ExampleParams& p, double t, const ExampleSourceB& src,
                                         const std::vector<double>& z_grid);

// Printed eigenfunction pairs. The case-B G1 tail term is implemented as
// printed by default; SignFixedTail flips the sign of its second component,
// which asymptotic matching against sigma1*h1 says is the correct one.
enum class CaseBG1Convention { AsPrinted, SignFixedTail };

Vec2 example_F1_case_a(double x, double t, const ExampleParams& p, const ExampleSourceA& src);
Vec2 example_G1_case_a(double x, double t, const ExampleParams& p, const ExampleSourceA& src);
Vec2 example_F1_case_b(double x, double t, const ExampleParams& p, const ExampleSourceB& src);
Vec2 example_G1_case_b(double x, double t, const ExampleParams& p, const ExampleSourceB& src,
                       CaseBG1Convention convention = CaseBG1Convention::AsPrinted);

// Field plus source pair at one point.
struct ExampleTriple {
    Complex u{};
    Vec2 F1{}, G1{};
};
ExampleTriple example_field_case_a(double x, double t, const ExampleParams& p, const ExampleSourceA& src);
ExampleTriple example_field_case_b(double x, double t, const ExampleParams& p, const ExampleSourceB& src,
                                   CaseBG1Convention convention = CaseBG1Convention::AsPrinted);

}  // namespace nls

#endif
