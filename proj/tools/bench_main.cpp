// Benchmark: OpenMP drivers against their serial reference twins on the
// closed-form soliton problem (scattering scan, eigenvalue search, GLM
// reconstruction).

#include <chrono>
#include <cstdio>

#include "nls/closed_form.hpp"
#include "nls/glm.hpp"
#include "nls/parallel.hpp"
#include "nls/scattering.hpp"

using namespace nls;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    const ExampleParams p = ExampleParams::consistent(1.0, 0.6, 1.0, 0.0);
    const Grid grid = Grid::symmetric(40.0, 2 * 4000 + 1);
    const PotentialField field =
        PotentialField::sample([&](double x) { return example_initial(x, p); }, grid, p.boundary(), 0.0);
    const auto z_grid = symmetric_z_grid(1.0, 40.0, 800);

    ScatteringOptions sopts;
    sopts.scan_points = 801;

    std::printf("threads available: %d\n", thread_count());
    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");

    {
        ScatteringData sd_serial, sd_par;
        const double ts = time_ms([&] { sd_serial = scattering_on_grid_serial(field, z_grid, sopts); });
        const double tp = time_ms([&] { sd_par = scattering_on_grid(field, z_grid, sopts); });
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "scattering_on_grid", ts, tp, ts / tp);

        sd_par.eigenvalues = find_eigenvalues(field, sopts);
        sd_par.norming = norming_constants(field, sd_par.eigenvalues, sopts);
        for (double xi : sd_par.eigenvalues) {
            const auto ad = a_derivative(field, xi, sopts);
            sd_par.a_dot_z.push_back(ad.dz);
            sd_par.a_dot_xi.push_back(ad.dxi);
        }

        const double te_s = time_ms([&] { (void)find_eigenvalues_serial(field, sopts); });
        const double te_p = time_ms([&] { (void)find_eigenvalues(field, sopts); });
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "find_eigenvalues", te_s, te_p, te_s / te_p);

        GlmOptions gopts;
        gopts.base_panels = 96;
        const Grid rgrid = Grid::symmetric(8.0, 33);
        const double tg_s = time_ms([&] { (void)reconstruct_field_serial(sd_par, 0.0, rgrid, gopts); });
        const double tg_p = time_ms([&] { (void)reconstruct_field(sd_par, 0.0, rgrid, gopts); });
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "reconstruct_field", tg_s, tg_p, tg_s / tg_p);
    }
    return 0;
}
