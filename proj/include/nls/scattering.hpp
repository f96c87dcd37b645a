#ifndef NLS_SCATTERING_HPP
#define NLS_SCATTERING_HPP

#include <optional>

#include "nls/jost.hpp"
#include "nls/scattering_data.hpp"

namespace nls {

// Direct scattering: a and b from Wronskians of the Jost columns at a
// matching point, eigenvalues as the gap zeros of a, norming constants from
// the proportionality phi_n = c_n psi_n, and the derivative of a from the
// xi-augmented integration.

struct CoefficientResult {
    Complex a{};
    std::optional<Complex> b;         // absent at gap points
    std::optional<Complex> a_dot_xi;  // present when requested
};

CoefficientResult scattering_coefficients(const PotentialField& field, const SpectralPoint& point,
                                          const ScatteringOptions& opts = {},
                                          bool with_derivative = false);

// a evaluated at several matching offsets (x-invariance diagnostic).
std::vector<Complex> a_matching_samples(const PotentialField& field, const SpectralPoint& point,
                                        const std::vector<double>& x_offsets,
                                        const ScatteringOptions& opts = {});

// Continuous part on a real z grid (inversion symmetric). OpenMP; the
// _serial twin is the reference implementation.
ScatteringData scattering_on_grid(const PotentialField& field, const std::vector<double>& z_grid,
                                  const ScatteringOptions& opts = {});
ScatteringData scattering_on_grid_serial(const PotentialField& field, const std::vector<double>& z_grid,
                                         const ScatteringOptions& opts = {});

std::vector<double> find_eigenvalues(const PotentialField& field, const ScatteringOptions& opts = {});
std::vector<double> find_eigenvalues_serial(const PotentialField& field,
                                            const ScatteringOptions& opts = {});

struct ADerivative {
    Complex dxi{}, dz{};
};
ADerivative a_derivative(const PotentialField& field, double xi_n, const ScatteringOptions& opts = {});

// phi_n and psi_n assembled from the stable integration direction on each
// side of the peak, plus the norming constant.
struct EigenPair {
    Grid sgrid;
    std::vector<Vec2> phi, psi;
    Complex c_n{};
    int peak_index = 0;
};
EigenPair eigenfunction_pair(const PotentialField& field, double xi_n,
                             const ScatteringOptions& opts = {});

std::vector<Complex> norming_constants(const PotentialField& field,
                                       const std::vector<double>& eigenvalues,
                                       const ScatteringOptions& opts = {});

// Second-kind solution h_n = d/dxi (phi - c_n psi) / a_dot at xi_n.
struct SecondSolution {
    Grid sgrid;
    std::vector<Vec2> h;
    Complex a_dot_xi{};
};
SecondSolution second_solution(const PotentialField& field, double xi_n, Complex c_n,
                               const ScatteringOptions& opts = {});

// Full direct problem: continuous samples plus discrete data.
ScatteringData direct_scattering(const PotentialField& field, const std::vector<double>& z_grid,
                                 const ScatteringOptions& opts = {});

// Product-integral representation of a and the z -> 0 theta relation.
struct TraceFormulaResult {
    double max_rel_err_a = 0.0;   // formula vs stored a over sampled nodes
    Complex theta_lhs{};          // e^{-i theta}
    Complex theta_rhs{};          // Blaschke product times the r integral at z -> 0
    double theta_residual = 0.0;  // |lhs - rhs|
    bool quadrature_warning = false;  // some |r| close to 1
    int samples = 0;
};
TraceFormulaResult trace_formula_check(const ScatteringData& sd, int sample_stride = 37);

}  // namespace nls

#endif
