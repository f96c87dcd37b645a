#ifndef NLS_SCATTERING_DATA_HPP
#define NLS_SCATTERING_DATA_HPP

#include <vector>

#include "nls/types.hpp"

namespace nls {

struct ContinuousSample {
    double z = 0.0;
    Complex a{}, b{}, r{};  // r = b/a
};

// Scattering data of the spectral problem at a fixed time: (a, b, r) sampled
// on a real z grid, plus the discrete eigenvalues xi_n in (-rho, rho), the
// norming constants c_n and the derivative of a at each z_n (stored in both
// the z and the xi variable).
struct ScatteringData {
    BoundaryData boundary;
    double time = 0.0;
    std::vector<ContinuousSample> continuous;

    std::vector<double> eigenvalues;
    std::vector<Complex> norming;
    std::vector<Complex> a_dot_z;
    std::vector<Complex> a_dot_xi;

    std::size_t n_eigen() const { return eigenvalues.size(); }
    double nu_n(std::size_t i) const {
        const double xi = eigenvalues[i];
        return std::sqrt(boundary.rho * boundary.rho - xi * xi);
    }
    Complex z_n(std::size_t i) const { return {eigenvalues[i], nu_n(i)}; }
    double max_abs_r() const {
        double m = 0.0;
        for (const auto& s : continuous) m = std::max(m, std::abs(s.r));
        return m;
    }
};

// Inversion-symmetric log-spaced z grid over [-Z, -rho^2/Z] u [rho^2/Z, Z]
// (the node set maps to itself under z -> rho^2/z; |z| = rho is excluded by
// construction since the node count per half is even).
std::vector<double> symmetric_z_grid(double rho, double z_max, int total_nodes);

}  // namespace nls

#endif
