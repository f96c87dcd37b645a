#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nls/closed_form.hpp"
#include "nls/glm.hpp"
#include "nls/parallel.hpp"
#include "nls/scattering.hpp"

using namespace nls;

// The OpenMP drivers must agree bitwise with their serial reference twins:
// per-index work is independent and writes only its own slot.

namespace {

const ExampleParams kP = ExampleParams::consistent(1.0, 0.6, 1.0, 0.0);

PotentialField soliton() {
    return PotentialField::sample([&](double x) { return example_initial(x, kP); },
                                  Grid::symmetric(40.0, 2 * 4000 + 1), kP.boundary(), 0.0);
}

}  // namespace

TEST_CASE("scattering grid scan: parallel equals serial bitwise") {
    const PotentialField f = soliton();
    const auto z_grid = symmetric_z_grid(1.0, 40.0, 120);
    const ScatteringData par = scattering_on_grid(f, z_grid);
    const ScatteringData ser = scattering_on_grid_serial(f, z_grid);
    REQUIRE(par.continuous.size() == ser.continuous.size());
    for (std::size_t i = 0; i < par.continuous.size(); ++i) {
        CHECK(par.continuous[i].a == ser.continuous[i].a);
        CHECK(par.continuous[i].b == ser.continuous[i].b);
    }
}

TEST_CASE("eigenvalue scan: parallel equals serial bitwise") {
    const PotentialField f = soliton();
    ScatteringOptions opts;
    opts.scan_points = 301;
    const auto par = find_eigenvalues(f, opts);
    const auto ser = find_eigenvalues_serial(f, opts);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("field reconstruction: parallel equals serial bitwise") {
    ScatteringData sd;
    sd.boundary = kP.boundary();
    sd.time = 0.0;
    sd.eigenvalues = {kP.zeta()};
    sd.norming = {example_c1(0.0, kP, 0.0)};
    sd.a_dot_z = {example_a_dot_z(kP)};
    sd.a_dot_xi = {example_a_dot_xi(kP)};

    GlmOptions opts;
    opts.base_panels = 64;
    const Grid rgrid = Grid::symmetric(6.0, 13);
    const PotentialField par = reconstruct_field(sd, 0.0, rgrid, opts, 1e-2);
    const PotentialField ser = reconstruct_field_serial(sd, 0.0, rgrid, opts, 1e-2);
    for (int i = 0; i < rgrid.n; ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("thread count control") {
    set_thread_count(3);
    CHECK(thread_count() >= 1);
    set_thread_count(0);
    CHECK(thread_count() >= 1);
}
