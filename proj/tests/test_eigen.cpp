#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nls/closed_form.hpp"
#include "nls/scattering.hpp"

using namespace nls;

namespace {

PotentialField soliton_field(const ExampleParams& p, double X = 40.0, int steps = 8000) {
    return PotentialField::sample([&](double x) { return example_initial(x, p); },
                                  Grid::symmetric(X, 2 * steps + 1), p.boundary(), 0.0);
}

const ExampleParams kP = ExampleParams::consistent(1.0, 0.6, 1.0, 0.0);

// two well-separated dips: eigenvalues near zeta1 and zeta2
PotentialField two_soliton_field() {
    const double nu1 = 0.6, zeta1 = 0.8, nu2 = 0.8, zeta2 = 0.6;
    const double phi1 = std::atan2(nu1, zeta1), phi2 = std::atan2(nu2, zeta2);
    auto u = [&](double x) {
        const Complex v1 = zeta1 - kI * nu1 * std::tanh(nu1 * (x + 6.0));
        const Complex v2 = zeta2 - kI * nu2 * std::tanh(nu2 * (x - 6.0));
        return v1 * v2;
    };
    const BoundaryData b(1.0, phi1 + phi2, -(phi1 + phi2));
    return PotentialField::sample(u, Grid::symmetric(40.0, 2 * 8000 + 1), b, 0.0);
}

}  // namespace

TEST_CASE("soliton has exactly one eigenvalue at zeta") {
    const PotentialField f = soliton_field(kP);
    const auto eig = find_eigenvalues(f);
    REQUIRE(eig.size() == 1);
    CHECK(std::abs(eig[0] - 0.8) < 1e-8);
}

TEST_CASE("constant background has no eigenvalues") {
    const BoundaryData b(1.0, 0.2, 0.2);
    const PotentialField f = PotentialField::sample([&](double) { return std::exp(kI * 0.2); },
                                                    Grid::symmetric(40.0, 8001), b, 0.0);
    CHECK(find_eigenvalues(f).empty());
}

TEST_CASE("the offset parameter c moves the center, not the eigenvalue") {
    const ExampleParams p2(1.0, 0.6, 2.0, 0.0, kP.alpha_plus);
    const auto eig = find_eigenvalues(soliton_field(p2));
    REQUIRE(eig.size() == 1);
    CHECK(std::abs(eig[0] - 0.8) < 1e-8);
}

TEST_CASE("norming constant matches the closed form") {
    const PotentialField f = soliton_field(kP);
    const auto c = norming_constants(f, {0.8});
    REQUIRE(c.size() == 1);
    CHECK(std::abs(c[0] - Complex(0.6, 0.8)) < 1e-6);

    // doubling c doubles c1
    const ExampleParams p2(1.0, 0.6, 2.0, 0.0, kP.alpha_plus);
    const auto c2 = norming_constants(soliton_field(p2), {0.8});
    CHECK(std::abs(c2[0] - 2.0 * c[0]) < 1e-6);
}

TEST_CASE("a derivative at the eigenvalue, both variables") {
    const PotentialField f = soliton_field(kP);
    const auto ad = a_derivative(f, 0.8);
    CHECK(std::abs(ad.dz - example_a_dot_z(kP)) < 1e-6);
    CHECK(std::abs(ad.dxi - example_a_dot_xi(kP)) < 1e-6);
    // chain rule identity dz/dxi = 1 + xi/p
    const Complex dz_dxi = 1.0 + Complex(0.8) / Complex(0.0, 0.6);
    CHECK(std::abs(ad.dxi - ad.dz * dz_dxi) < 1e-12);
}

TEST_CASE("a_derivative rejects non-eigenvalues") {
    const BoundaryData b(1.0, 0.0, 0.0);
    const PotentialField f = PotentialField::sample([&](double) { return Complex(1.0); },
                                                    Grid::symmetric(40.0, 8001), b, 0.0);
    CHECK_THROWS_AS(a_derivative(f, 0.8), ValidationError);
}

TEST_CASE("eigenfunction pair rejects non-eigenvalues") {
    const PotentialField f = soliton_field(kP);
    CHECK_THROWS_AS(eigenfunction_pair(f, 0.5), ProportionalityViolation);
}

TEST_CASE("eigenvalues match zeta for random parameter draws") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> rho_d(0.7, 1.4), ratio_d(0.35, 0.85), c_d(0.5, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double rho = rho_d(rng);
        const double nu = ratio_d(rng) * rho;
        const ExampleParams p = ExampleParams::consistent(rho, nu, c_d(rng), 0.0);
        const double X = 30.0 / nu;
        const int steps = static_cast<int>(std::ceil(2.0 * X / (0.015 / nu) / 2.0)) * 2;
        ScatteringOptions opts;
        opts.scan_points = 501;
        const auto eig = find_eigenvalues(soliton_field(p, X, steps), opts);
        REQUIRE(eig.size() == 1);
        CHECK(std::abs(eig[0] - p.zeta()) < 1e-8);
    }
}

TEST_CASE("second solution: asymptotics, equation residual, wronskian") {
    const PotentialField f = soliton_field(kP);
    const EigenPair pair = eigenfunction_pair(f, 0.8);
    const SecondSolution hs = second_solution(f, 0.8, pair.c_n);

    // right-boundary asymptote (1, i(xi - p) e^{i alpha+}/rho)^T e^{nu x}
    const SpectralPoint pt = gap_point(0.8, f.boundary());
    const Vec2 v = background_vector(ColumnKind::PsiBar, pt, f.boundary(), 0.0);
    const int iR = hs.sgrid.index_near(34.0);
    const double xR = hs.sgrid.x(iR);
    const Complex growth = std::exp(-kI * pt.p * xR);
    CHECK(rel_err(hs.h[static_cast<std::size_t>(iR)].a, v.a * growth) < 1e-5);
    CHECK(rel_err(hs.h[static_cast<std::size_t>(iR)].b, v.b * growth) < 1e-5);

    // left-boundary asymptote -c1 (-i(xi-p) e^{-i alpha-}/rho, 1)^T e^{-nu x}
    const Vec2 w = background_vector(ColumnKind::PhiBar, pt, f.boundary(), 0.0);
    const int iL = hs.sgrid.index_near(-34.0);
    const Complex growthL = std::exp(kI * pt.p * hs.sgrid.x(iL));
    CHECK(rel_err(hs.h[static_cast<std::size_t>(iL)].a, -pair.c_n * w.a * growthL) < 1e-5);
    CHECK(rel_err(hs.h[static_cast<std::size_t>(iL)].b, -pair.c_n * w.b * growthL) < 1e-5);

    // (L - xi) h = 0: central-difference residual, relative to |h|
    const Grid& g = hs.sgrid;
    double max_rel = 0.0;
    for (int i = g.n / 10; i < g.n - g.n / 10; i += 7) {
        const std::size_t k = static_cast<std::size_t>(i);
        const Complex u = f.value(g.x(i));
        const Vec2 dh = (hs.h[k + 1] - hs.h[k - 1]) * (1.0 / (2.0 * g.dx));
        const Complex r1 = dh.a - (-kI * 0.8 * hs.h[k].a + std::conj(u) * hs.h[k].b);
        const Complex r2 = dh.b - (u * hs.h[k].a + kI * 0.8 * hs.h[k].b);
        const double scale = hs.h[k].norm() + 1.0;
        max_rel = std::max(max_rel, std::max(std::abs(r1), std::abs(r2)) / scale);
    }
    CHECK(max_rel < 1e-4);

    // det(phi_n, h_n) = -2 p (xi - p) c_n / rho^2, constant in x
    const Complex want = -jost_det_normalization(pt, f.boundary()) * pair.c_n;
    for (int i = 0; i < g.n; i += 500)
        CHECK(rel_err(det2(pair.phi[static_cast<std::size_t>(i)], hs.h[static_cast<std::size_t>(i)]), want) < 1e-6);
}

TEST_CASE("shallow soliton: eigenvalue close to the band edge is still resolved") {
    // nu = 0.15 puts xi1 = sqrt(1 - 0.0225) ~ 0.9887, near the scan margin
    const ExampleParams p = ExampleParams::consistent(1.0, 0.15, 1.0, 0.0);
    const double X = 30.0 / 0.15;
    const int steps = 20000;
    ScatteringOptions opts;
    opts.scan_points = 1001;
    const auto eig = find_eigenvalues(soliton_field(p, X, steps), opts);
    REQUIRE(eig.size() == 1);
    CHECK(std::abs(eig[0] - p.zeta()) < 1e-8);
}

TEST_CASE("two-dip potential: both eigenvalues found") {
    const PotentialField f = two_soliton_field();
    const auto eig = find_eigenvalues(f);
    REQUIRE(eig.size() == 2);
    CHECK(std::abs(eig[0] - 0.6) < 1e-4);
    CHECK(std::abs(eig[1] - 0.8) < 1e-4);

    ScatteringOptions strict;
    strict.collision_tol = 0.5;  // force the separation guard
    CHECK_THROWS_AS(find_eigenvalues(f, strict), DoubleRootSuspected);
}
