#ifndef NLS_LINALG_HPP
#define NLS_LINALG_HPP

#include <vector>

#include "nls/types.hpp"

namespace nls {

// Dense complex LU with partial pivoting, row-major storage. Sized for the
// per-x Nystrom solves (n up to a few thousand); the elimination inner loop
// runs over split real/imaginary arrays so the compiler can vectorize it.
class DenseLu {
  public:
    DenseLu(std::vector<Complex> a, int n);  // factors in place

    int size() const { return n_; }
    // Solve A x = b for one right-hand side (in place).
    void solve(std::vector<Complex>& b) const;
    // Hager-style 1-norm estimate of cond(A) = ||A||_1 * ||A^-1||_1.
    double condition_estimate() const;

  private:
    void solve_transposed(std::vector<Complex>& b) const;  // A^T x = b, for the norm estimator

    int n_ = 0;
    std::vector<double> re_, im_;  // factored matrix, split layout
    std::vector<int> piv_;
    double norm1_ = 0.0;  // 1-norm of the original matrix
};

}  // namespace nls

#endif
