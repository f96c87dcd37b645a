#include "nls/scattering_data.hpp"

#include <algorithm>
#include <cmath>

namespace nls {

std::vector<double> symmetric_z_grid(double rho, double z_max, int total_nodes) {
    if (!(z_max > rho)) throw ValidationError("symmetric_z_grid: need z_max > rho");
    if (total_nodes < 8 || total_nodes % 4 != 0)
        throw ValidationError("symmetric_z_grid: node count must be a multiple of 4 (>= 8)");
    const int half = total_nodes / 2;  // even, so no node lands on |z| = rho
    const double L = std::log(z_max / rho);
    std::vector<double> z;
    z.reserve(static_cast<std::size_t>(total_nodes));
    for (int k = 0; k < half; ++k) {
        const double u = -L + 2.0 * L * k / (half - 1);
        z.push_back(-rho * std::exp(-u));  // negative half, decreasing u keeps z increasing
    }
    for (int k = 0; k < half; ++k) {
        const double u = -L + 2.0 * L * k / (half - 1);
        z.push_back(rho * std::exp(u));
    }
    std::sort(z.begin(), z.end());
    return z;
}

}  // namespace nls
