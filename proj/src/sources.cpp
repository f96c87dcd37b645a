#include "nls/sources.hpp"

#include <cmath>
#include <string>

namespace nls {

Complex eigenfunction_overlap(const EigenPair& pair) {
    const int n = pair.sgrid.n;
    Complex s(0.0);
    for (int i = 0; i < n; ++i) {
        const Vec2& phi = pair.phi[static_cast<std::size_t>(i)];
        const Vec2& psi = pair.psi[static_cast<std::size_t>(i)];
        const Complex v = phi.b * psi.a + phi.a * psi.b;  // (sigma1 phi)^T psi
        s += (i == 0 || i == n - 1) ? 0.5 * v : v;
    }
    return s * pair.sgrid.dx;
}

std::vector<SourcePair> build_sources_case_a(const PotentialField& field,
                                             const std::vector<double>& eigenvalues,
                                             const SourceSpec& spec, double t,
                                             const ScatteringOptions& opts) {
    if (spec.kind != SourceCase::A) throw ValidationError("build_sources_case_a: spec is not case A");
    if (spec.n_terms() != eigenvalues.size())
        throw ArityMismatch("build_sources_case_a: term/eigenvalue count mismatch");
    spec.validate(t);

    std::vector<SourcePair> out;
    out.reserve(eigenvalues.size());
    for (std::size_t n = 0; n < eigenvalues.size(); ++n) {
        const EigenPair pair = eigenfunction_pair(field, eigenvalues[n], opts);
        const Complex alpha = spec.terms[n].alpha(t);
        const Complex An = spec.terms[n].A(t);
        const Complex overlap = eigenfunction_overlap(pair);
        if (std::abs(overlap) < 1e-12)
            throw DegenerateOverlap("build_sources_case_a: eigenfunction overlap below 1e-12 (term " +
                                    std::to_string(n) + ")");
        const Complex beta = An / (alpha * overlap);

        SourcePair sp;
        sp.sgrid = pair.sgrid;
        sp.F.resize(pair.phi.size());
        sp.G.resize(pair.phi.size());
        for (std::size_t i = 0; i < pair.phi.size(); ++i) {
            sp.F[i] = alpha * pair.psi[i];
            sp.G[i] = beta * sigma1(pair.phi[i]);
        }
        out.push_back(std::move(sp));
    }
    return out;
}

std::vector<SourcePair> build_sources_case_b(const PotentialField& field,
                                             const std::vector<double>& eigenvalues,
                                             const SourceSpec& spec, double t,
                                             const ScatteringOptions& opts) {
    if (spec.kind != SourceCase::B) throw ValidationError("build_sources_case_b: spec is not case B");
    if (spec.n_terms() != eigenvalues.size())
        throw ArityMismatch("build_sources_case_b: term/eigenvalue count mismatch");
    spec.validate(t);

    const double rho = field.boundary().rho;
    std::vector<SourcePair> out;
    out.reserve(eigenvalues.size());
    for (std::size_t n = 0; n < eigenvalues.size(); ++n) {
        const double xi_n = eigenvalues[n];
        const EigenPair pair = eigenfunction_pair(field, xi_n, opts);
        const SecondSolution second = second_solution(field, xi_n, pair.c_n, opts);

        const Complex Bn = spec.terms[n].B(t);
        const Complex beta = spec.terms[n].beta(t);
        const Complex p_n = kI * std::sqrt(rho * rho - xi_n * xi_n);
        const Complex alpha = -rho * rho * Bn / (2.0 * p_n * (xi_n - p_n));
        const Complex g_scale = beta / second.a_dot_xi;

        SourcePair sp;
        sp.sgrid = pair.sgrid;
        sp.F.resize(pair.phi.size());
        sp.G.resize(pair.phi.size());
        for (std::size_t i = 0; i < pair.phi.size(); ++i) {
            sp.F[i] = alpha * pair.psi[i];
            sp.G[i] = sigma1(g_scale * pair.phi[i] + second.h[i]);
        }

        // bilinear constraint f1 g1 - f2 g2 = B_n, constant in x
        double drift = 0.0;
        const double scale = std::max(1.0, std::abs(Bn));
        for (std::size_t i = 0; i < sp.F.size(); ++i) {
            const Complex bil = sp.F[i].a * sp.G[i].a - sp.F[i].b * sp.G[i].b;
            drift = std::max(drift, std::abs(bil - Bn) / scale);
        }
        if (drift > 1e-5)
            throw ConstraintViolation("build_sources_case_b: bilinear constraint drift " +
                                      std::to_string(drift) + " (term " + std::to_string(n) + ")");
        out.push_back(std::move(sp));
    }
    return out;
}

std::vector<Complex> source_rhs(const std::vector<SourcePair>& pairs) {
    if (pairs.empty()) return {};
    const Grid& g = pairs.front().sgrid;
    std::vector<Complex> rhs(static_cast<std::size_t>(g.n), Complex(0.0));
    for (const auto& p : pairs) {
        if (!(p.sgrid == g)) throw GridMismatch("source_rhs: pairs on different grids");
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            const Vec2& F = p.F[i];
            const Vec2& G = p.G[i];
            rhs[i] += -2.0 * kI * (std::conj(F.a) * std::conj(G.b) + F.b * G.a);
        }
    }
    return rhs;
}

}  // namespace nls
