#include "curveflow/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curveflow {

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw std::invalid_argument("solve_dense: shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a[r * n + k]) > std::abs(a[piv * n + k])) piv = r;
        }
        if (std::abs(a[piv * n + k]) < 1e-300) throw std::runtime_error("solve_dense: singular matrix");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
            std::swap(b[k], b[piv]);
        }
        const double d = a[k * n + k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a[r * n + k] / d;
            if (f == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri * n + c] * x[c];
        x[ri] = s / a[ri * n + ri];
    }
    return x;
}

// LAPACK-style storage: entry (i, j) lives at ab[j * ldab + kl + ku + i - j];
// the extra kl rows absorb pivoting fill.
BandedFactor::BandedFactor(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(n * static_cast<std::size_t>(2 * kl + ku + 1), 0.0),
      ipiv_(n) {}

double &BandedFactor::entry(std::size_t i, std::size_t j) {
    return ab_[j * static_cast<std::size_t>(ldab_) + static_cast<std::size_t>(kl_ + ku_) + i - j];
}

void BandedFactor::factor() {
    const std::size_t band_top = static_cast<std::size_t>(kl_ + ku_);
    const std::size_t ldab = static_cast<std::size_t>(ldab_);
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t km = std::min<std::size_t>(static_cast<std::size_t>(kl_), n_ - 1 - j);
        std::size_t p = 0;
        for (std::size_t r = 1; r <= km; ++r) {
            if (std::abs(ab_[j * ldab + band_top + r]) > std::abs(ab_[j * ldab + band_top + p])) p = r;
        }
        ipiv_[j] = j + p;
        if (std::abs(ab_[j * ldab + band_top + p]) < 1e-300) {
            throw std::runtime_error("banded LU: singular matrix");
        }
        const std::size_t last_col = std::min(n_ - 1, j + static_cast<std::size_t>(kl_ + ku_));
        if (p != 0) {
            for (std::size_t c = j; c <= last_col; ++c) {
                std::swap(ab_[c * ldab + band_top + j - c], ab_[c * ldab + band_top + j + p - c]);
            }
        }
        const double piv = ab_[j * ldab + band_top];
        for (std::size_t r = 1; r <= km; ++r) {
            const double f = ab_[j * ldab + band_top + r] / piv;
            ab_[j * ldab + band_top + r] = f;
            if (f == 0.0) continue;
            for (std::size_t c = j + 1; c <= last_col; ++c) {
                ab_[c * ldab + band_top + j + r - c] -= f * ab_[c * ldab + band_top + j - c];
            }
        }
    }
    factored_ = true;
}

void BandedFactor::solve_in_place(std::vector<double> &x) const {
    if (!factored_) throw std::logic_error("BandedFactor: factor() not called");
    if (x.size() != n_) throw std::invalid_argument("BandedFactor: rhs size mismatch");
    const std::size_t band_top = static_cast<std::size_t>(kl_ + ku_);
    const std::size_t ldab = static_cast<std::size_t>(ldab_);
    for (std::size_t j = 0; j + 1 < n_; ++j) {
        if (ipiv_[j] != j) std::swap(x[j], x[ipiv_[j]]);
        const std::size_t km = std::min<std::size_t>(static_cast<std::size_t>(kl_), n_ - 1 - j);
        for (std::size_t r = 1; r <= km; ++r) {
            x[j + r] -= ab_[j * ldab + band_top + r] * x[j];
        }
    }
    for (std::size_t jj = n_; jj-- > 0;) {
        const std::size_t last_col = std::min(n_ - 1, jj + static_cast<std::size_t>(kl_ + ku_));
        double s = x[jj];
        for (std::size_t c = jj + 1; c <= last_col; ++c) {
            s -= ab_[c * ldab + band_top + jj - c] * x[c];
        }
        x[jj] = s / ab_[jj * ldab + band_top];
    }
}

std::vector<double> solve_cyclic_banded(const CyclicBandMatrix &a, const std::vector<double> &rhs) {
    const std::size_t n = a.n;
    const int kb = a.kb;
    if (rhs.size() != n) throw std::invalid_argument("solve_cyclic_banded: rhs size mismatch");

    if (n <= static_cast<std::size_t>(4 * kb + 4)) {
        std::vector<double> dense(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (int off = -kb; off <= kb; ++off) {
                dense[i * n + a.col(i, off)] += a.at(i, off);
            }
        }
        return solve_dense(std::move(dense), rhs);
    }

    // Split A = B + sum_r e_r c_r^T: B keeps the in-band entries, the c_r carry
    // the wrapped corner entries of the first/last kb rows.
    BandedFactor core(n, kb, kb);
    struct Corner {
        std::size_t row;
        std::vector<std::pair<std::size_t, double>> cols;
    };
    std::vector<Corner> corners;
    for (std::size_t i = 0; i < n; ++i) {
        Corner c{i, {}};
        for (int off = -kb; off <= kb; ++off) {
            const double v = a.at(i, off);
            if (v == 0.0) continue;
            const long j_lin = static_cast<long>(i) + off;
            if (j_lin >= 0 && j_lin < static_cast<long>(n)) {
                core.entry(i, static_cast<std::size_t>(j_lin)) += v;
            } else {
                c.cols.emplace_back(a.col(i, off), v);
            }
        }
        if (!c.cols.empty()) corners.push_back(std::move(c));
    }
    core.factor();

    std::vector<double> y = rhs;
    core.solve_in_place(y);
    if (corners.empty()) return y;

    const std::size_t k = corners.size();
    std::vector<std::vector<double>> z(k, std::vector<double>(n, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        z[c][corners[c].row] = 1.0;
        core.solve_in_place(z[c]);
    }
    // Woodbury reduction: (I + V^T Z) w = V^T y, then x = y - Z w.
    std::vector<double> s_mat(k * k, 0.0), g(k, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
        for (const auto &[col_idx, v] : corners[r].cols) {
            g[r] += v * y[col_idx];
            for (std::size_t c = 0; c < k; ++c) s_mat[r * k + c] += v * z[c][col_idx];
        }
        s_mat[r * k + r] += 1.0;
    }
    const std::vector<double> w = solve_dense(std::move(s_mat), std::move(g));
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) y[i] -= z[c][i] * w[c];
    }
    return y;
}

} // namespace curveflow
