#include "nls/linalg.hpp"

#include <cmath>

namespace nls {

DenseLu::DenseLu(std::vector<Complex> a, int n) : n_(n), piv_(n, 0) {
    if (n < 1 || static_cast<std::size_t>(n) * n != a.size())
        throw ValidationError("DenseLu: matrix size mismatch");

    re_.resize(static_cast<std::size_t>(n) * n);
    im_.resize(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        re_[i] = a[i].real();
        im_[i] = a[i].imag();
    }

    // 1-norm of A (max column sum), kept for the condition estimate.
    std::vector<double> colsum(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) colsum[j] += std::hypot(re_[i * static_cast<std::size_t>(n) + j], im_[i * static_cast<std::size_t>(n) + j]);
    for (int j = 0; j < n; ++j) norm1_ = std::max(norm1_, colsum[j]);

    const std::size_t N = static_cast<std::size_t>(n);
    for (int k = 0; k < n; ++k) {
        // partial pivot on |a_ik|^2
        int p = k;
        double best = re_[k * N + k] * re_[k * N + k] + im_[k * N + k] * im_[k * N + k];
        for (int i = k + 1; i < n; ++i) {
            const double v = re_[i * N + k] * re_[i * N + k] + im_[i * N + k] * im_[i * N + k];
            if (v > best) { best = v; p = i; }
        }
        piv_[k] = p;
        if (best == 0.0) throw SingularSystem("DenseLu: exact zero pivot");
        if (p != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(re_[k * N + j], re_[p * N + j]);
                std::swap(im_[k * N + j], im_[p * N + j]);
            }
        }

        const double dr = re_[k * N + k], di = im_[k * N + k];
        const double inv = 1.0 / (dr * dr + di * di);
        const double* __restrict xr = &re_[k * N];
        const double* __restrict xi = &im_[k * N];
        for (int i = k + 1; i < n; ++i) {
            double* __restrict yr = &re_[i * N];
            double* __restrict yi = &im_[i * N];
            // l = a_ik / a_kk
            const double lr = (yr[k] * dr + yi[k] * di) * inv;
            const double li = (yi[k] * dr - yr[k] * di) * inv;
            yr[k] = lr;
            yi[k] = li;
            for (int j = k + 1; j < n; ++j) {
                const double ar = xr[j], ai = xi[j];
                yr[j] -= lr * ar - li * ai;
                yi[j] -= lr * ai + li * ar;
            }
        }
    }
}

void DenseLu::solve(std::vector<Complex>& b) const {
    if (static_cast<int>(b.size()) != n_) throw ValidationError("DenseLu::solve: rhs size mismatch");
    const std::size_t N = static_cast<std::size_t>(n_);
    for (int k = 0; k < n_; ++k)
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);

    for (int i = 1; i < n_; ++i) {
        Complex s = b[i];
        const double* yr = &re_[i * N];
        const double* yi = &im_[i * N];
        for (int j = 0; j < i; ++j) s -= Complex(yr[j], yi[j]) * b[j];
        b[i] = s;
    }
    for (int i = n_ - 1; i >= 0; --i) {
        Complex s = b[i];
        const double* yr = &re_[i * N];
        const double* yi = &im_[i * N];
        for (int j = i + 1; j < n_; ++j) s -= Complex(yr[j], yi[j]) * b[j];
        b[i] = s / Complex(yr[i], yi[i]);
    }
}

void DenseLu::solve_transposed(std::vector<Complex>& b) const {
    const std::size_t N = static_cast<std::size_t>(n_);
    // U^T w = b (forward)
    for (int i = 0; i < n_; ++i) {
        Complex s = b[i];
        for (int j = 0; j < i; ++j) s -= Complex(re_[j * N + i], im_[j * N + i]) * b[j];
        b[i] = s / Complex(re_[i * N + i], im_[i * N + i]);
    }
    // L^T v = w (backward, unit diagonal)
    for (int i = n_ - 1; i >= 0; --i) {
        Complex s = b[i];
        for (int j = i + 1; j < n_; ++j) s -= Complex(re_[j * N + i], im_[j * N + i]) * b[j];
        b[i] = s;
    }
    for (int k = n_ - 1; k >= 0; --k)
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
}

double DenseLu::condition_estimate() const {
    // Hager iteration for ||A^-1||_1 with a handful of sweeps.
    std::vector<Complex> x(n_, Complex(1.0 / n_, 0.0));
    double est = 0.0;
    for (int sweep = 0; sweep < 4; ++sweep) {
        std::vector<Complex> y = x;
        solve(y);
        double n1 = 0.0;
        for (const auto& v : y) n1 += std::abs(v);
        if (n1 <= est && sweep > 0) break;
        est = n1;
        std::vector<Complex> xi(n_);
        for (int i = 0; i < n_; ++i) {
            const double m = std::abs(y[i]);
            xi[i] = m > 0.0 ? y[i] / m : Complex(1.0, 0.0);
        }
        solve_transposed(xi);
        int jmax = 0;
        double vmax = 0.0;
        for (int i = 0; i < n_; ++i) {
            const double v = std::abs(xi[i]);
            if (v > vmax) { vmax = v; jmax = i; }
        }
        x.assign(n_, Complex(0.0));
        x[jmax] = Complex(1.0, 0.0);
    }
    return norm1_ * est;
}

}  // namespace nls
