#ifndef NLS_SOURCES_HPP
#define NLS_SOURCES_HPP

#include <vector>

#include "nls/evolution.hpp"
#include "nls/scattering.hpp"

namespace nls {

// Source eigenfunction pairs (F_n, G_n) and the right-hand side of the field
// equation. Case (A): F_n = alpha_n psi_n, G_n = beta_n sigma1 phi_n with
// beta_n normalized so that int G_n^T F_n = A_n(t). Case (B): F_n scaled by
// the bilinear constraint f1 g1 - f2 g2 = B_n(t), G_n built from the
// second-kind solution h_n.

struct SourcePair {
    Grid sgrid;
    std::vector<Vec2> F, G;

    // conjugate extensions F_{N+n} = (f2*, f1*)^T, G_{N+n} = (g2*, g1*)^T
    Vec2 F_conj(int i) const { return sigma1(conj(F[static_cast<std::size_t>(i)])); }
    Vec2 G_conj(int i) const { return sigma1(conj(G[static_cast<std::size_t>(i)])); }
};

std::vector<SourcePair> build_sources_case_a(const PotentialField& field,
                                             const std::vector<double>& eigenvalues,
                                             const SourceSpec& spec, double t,
                                             const ScatteringOptions& opts = {});

std::vector<SourcePair> build_sources_case_b(const PotentialField& field,
                                             const std::vector<double>& eigenvalues,
                                             const SourceSpec& spec, double t,
                                             const ScatteringOptions& opts = {});

// RHS = -2i sum_n (f1_n* g2_n* + f2_n g1_n) on the common grid.
std::vector<Complex> source_rhs(const std::vector<SourcePair>& pairs);

// int (sigma1 phi_n)^T psi_n dx over the grid (trapezoid), exposed for tests.
Complex eigenfunction_overlap(const EigenPair& pair);

}  // namespace nls

#endif
