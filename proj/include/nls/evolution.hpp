#ifndef NLS_EVOLUTION_HPP
#define NLS_EVOLUTION_HPP

#include <vector>

#include "nls/scattering_data.hpp"
#include "nls/time_function.hpp"

namespace nls {

// Time evolution of the scattering data under the self-consistent source.
// a and the eigenvalues are constants of motion in both cases; b picks up
// the pure phase exp(-2 i rho^2 t - 4 i xi p t); the norming constants carry
// the source integrals.

enum class SourceCase { A, B };

struct SourceTerm {
    // case A data
    TimeFunction A = TimeFunction::zero();
    TimeFunction alpha = TimeFunction(Complex(1.0));  // gauge, nonzero where evaluated
    // case B data
    TimeFunction B = TimeFunction::zero();  // real valued
    TimeFunction beta = TimeFunction::zero();
};

struct SourceSpec {
    SourceCase kind = SourceCase::A;
    std::vector<SourceTerm> terms;

    std::size_t n_terms() const { return terms.size(); }
    void validate(double t_max) const;  // B real, alpha nonzero at samples
};

Complex evolve_b(Complex b0, double xi, double p, double t, double rho);

Complex evolve_c_case_a(Complex c0, double xi_k, Complex p_k, double t, const TimeFunction& A_k);

Complex evolve_c_case_b(Complex c0, double xi_k, Complex p_k, double t, const TimeFunction& beta_k,
                        const TimeFunction& B_k);

// Whole-data evolution; sd0 must be at t = 0 and spec must carry one term
// per eigenvalue.
ScatteringData evolve_scattering_data(const ScatteringData& sd0, double t, const SourceSpec& spec);

}  // namespace nls

#endif
