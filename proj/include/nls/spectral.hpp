#ifndef NLS_SPECTRAL_HPP
#define NLS_SPECTRAL_HPP

#include "nls/types.hpp"

namespace nls {

// Two-sheeted spectral variable p(xi) = sqrt(xi^2 - rho^2) and the
// uniformization map z = xi + p. The continuous spectrum Sigma is the real
// xi axis with |xi| >= rho, where sign p = sign xi; the gap (-rho, rho) on
// the upper sheet carries p = i*sqrt(rho^2 - xi^2). Im z > 0 corresponds to
// the upper sheet; |z| = rho is the image of the gap.

enum class Sheet { PlusSheet, MinusSheet, ContinuousSpectrum };

struct SpectralPoint {
    Complex xi{};
    Complex p{};
    Complex z{};
    Sheet sheet = Sheet::ContinuousSpectrum;
};

// Relative margin around the branch points xi = +-rho inside which spectral
// evaluations are refused. Jost normalization degenerates as p -> 0.
inline constexpr double kBranchMargin = 1e-8;

Complex p_of_xi(Complex xi, Sheet sheet, const BoundaryData& boundary,
                double branch_margin = kBranchMargin);

// z = xi + p after checking p^2 = xi^2 - rho^2 to tolerance.
Complex to_uniformization(Complex xi, Complex p, const BoundaryData& boundary, double tol = 1e-10);

// z -> (xi, p); OriginError for |z| below margin.
std::pair<Complex, Complex> from_uniformization(Complex z, const BoundaryData& boundary,
                                                double origin_margin = 1e-12);

SpectralPoint make_point(Complex xi, Sheet sheet, const BoundaryData& boundary,
                         double branch_margin = kBranchMargin);

// Point from the uniformization variable; the sheet tag is inferred from z.
SpectralPoint point_from_z(Complex z, const BoundaryData& boundary);

// Real xi with |xi| >= rho (continuous spectrum) or xi in the gap on the
// upper sheet. Convenience wrappers used throughout the scattering code.
SpectralPoint sigma_point(double xi, const BoundaryData& boundary);
SpectralPoint gap_point(double xi, const BoundaryData& boundary);

}  // namespace nls

#endif
