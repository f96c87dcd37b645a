#include "nls/spectral.hpp"

#include <cmath>

namespace nls {

namespace {

void check_branch_distance(Complex xi, const BoundaryData& b, double margin) {
    const double eps = margin * b.rho;
    if (std::abs(xi - b.rho) < eps || std::abs(xi + b.rho) < eps)
        throw BranchPointError("spectral point within branch margin of xi = +-rho");
}

bool is_real(Complex v, double tol) { return std::abs(v.imag()) <= tol * std::max(1.0, std::abs(v.real())); }

}  // namespace

Complex p_of_xi(Complex xi, Sheet sheet, const BoundaryData& boundary, double branch_margin) {
    check_branch_distance(xi, boundary, branch_margin);
    const double rho = boundary.rho;
    const double real_tol = 1e-12;

    if (sheet == Sheet::ContinuousSpectrum) {
        if (!is_real(xi, real_tol) || std::abs(xi.real()) < rho)
            throw SheetMismatch("continuous spectrum requires real xi with |xi| >= rho");
        const double x = xi.real();
        const double mag = std::sqrt(x * x - rho * rho);
        return Complex(x >= 0.0 ? mag : -mag, 0.0);  // sign p = sign xi
    }

    // Gap points: p purely imaginary, Im p > 0 on the upper sheet.
    if (is_real(xi, real_tol) && std::abs(xi.real()) < rho) {
        const double v = std::sqrt(rho * rho - xi.real() * xi.real());
        return sheet == Sheet::PlusSheet ? Complex(0.0, v) : Complex(0.0, -v);
    }
    if (is_real(xi, real_tol))
        throw SheetMismatch("real xi with |xi| >= rho lies on the continuous spectrum");

    // Generic complex xi: pick the root that puts z = xi + p in the half
    // plane matching the sheet.
    Complex root = std::sqrt(xi * xi - Complex(rho * rho));
    const bool upper = (xi + root).imag() > 0.0;
    if ((sheet == Sheet::PlusSheet) != upper) root = -root;
    return root;
}

Complex to_uniformization(Complex xi, Complex p, const BoundaryData& boundary, double tol) {
    const double r2 = boundary.rho * boundary.rho;
    const double scale = std::max({1.0, std::norm(xi), r2});
    if (std::abs(p * p - (xi * xi - r2)) > tol * scale)
        throw InconsistentPair("to_uniformization: p^2 != xi^2 - rho^2 within tolerance");
    return xi + p;
}

std::pair<Complex, Complex> from_uniformization(Complex z, const BoundaryData& boundary, double origin_margin) {
    if (std::abs(z) < origin_margin * boundary.rho)
        throw OriginError("uniformization inverse undefined at z = 0");
    const double r2 = boundary.rho * boundary.rho;
    const Complex xi = 0.5 * (z + r2 / z);
    const Complex p = 0.5 * (z - r2 / z);
    return {xi, p};
}

SpectralPoint make_point(Complex xi, Sheet sheet, const BoundaryData& boundary, double branch_margin) {
    SpectralPoint pt;
    pt.xi = xi;
    pt.sheet = sheet;
    pt.p = p_of_xi(xi, sheet, boundary, branch_margin);
    pt.z = xi + pt.p;
    return pt;
}

SpectralPoint point_from_z(Complex z, const BoundaryData& boundary) {
    auto [xi, p] = from_uniformization(z, boundary);
    SpectralPoint pt;
    pt.xi = xi;
    pt.p = p;
    pt.z = z;
    if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z.real())))
        pt.sheet = Sheet::ContinuousSpectrum;
    else
        pt.sheet = z.imag() > 0.0 ? Sheet::PlusSheet : Sheet::MinusSheet;
    return pt;
}

SpectralPoint sigma_point(double xi, const BoundaryData& boundary) {
    return make_point(Complex(xi, 0.0), Sheet::ContinuousSpectrum, boundary);
}

SpectralPoint gap_point(double xi, const BoundaryData& boundary) {
    return make_point(Complex(xi, 0.0), Sheet::PlusSheet, boundary);
}

}  // namespace nls
