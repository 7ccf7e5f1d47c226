#pragma once

#include <cstddef>
#include <vector>

namespace curveflow {

// Cyclic banded matrix: A(i, j) is nonzero only when (j - i) mod n lies in
// [-kb, kb]. Entries are stored row-major as band[i][off] = A(i, (i + off - kb) mod n)
// for off in 0..2*kb.
struct CyclicBandMatrix {
    std::size_t n = 0;
    int kb = 0;
    std::vector<double> band;

    CyclicBandMatrix() = default;
    CyclicBandMatrix(std::size_t n_, int kb_)
        : n(n_), kb(kb_), band(n_ * (2 * static_cast<std::size_t>(kb_) + 1), 0.0) {}

    double &at(std::size_t i, int off) { return band[i * (2 * kb + 1) + (off + kb)]; }
    double at(std::size_t i, int off) const { return band[i * (2 * kb + 1) + (off + kb)]; }
    std::size_t col(std::size_t i, int off) const {
        long j = (static_cast<long>(i) + off) % static_cast<long>(n);
        if (j < 0) j += static_cast<long>(n);
        return static_cast<std::size_t>(j);
    }
};

// Solves A x = rhs. The cyclic corner entries are handled by a low-rank
// correction of a banded LU with partial pivoting. Throws std::runtime_error if
// the matrix is numerically singular.
std::vector<double> solve_cyclic_banded(const CyclicBandMatrix &a, const std::vector<double> &rhs);

// Dense Gaussian elimination with partial pivoting; used for small systems and
// as the reduced solve inside solve_cyclic_banded.
std::vector<double> solve_dense(std::vector<double> matrix, std::vector<double> rhs);

// Banded LU with partial pivoting (non-cyclic). Assemble with entry(), call
// factor() once, then solve any number of right-hand sides.
class BandedFactor {
public:
    BandedFactor(std::size_t n, int kl, int ku);

    double &entry(std::size_t i, std::size_t j);
    void factor();
    void solve_in_place(std::vector<double> &x) const;
    std::vector<double> solve(std::vector<double> rhs) const {
        solve_in_place(rhs);
        return rhs;
    }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    int kl_, ku_, ldab_;
    bool factored_ = false;
    std::vector<double> ab_;
    std::vector<std::size_t> ipiv_;
};

} // namespace curveflow
