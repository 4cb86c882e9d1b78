#pragma once

#include <vector>

#include "orbitstrata/scalar.hpp"

namespace orbitstrata {

/// Dense matrix of exact scalars.
class ScalarMatrix {
public:
    ScalarMatrix() : rows_(0), cols_(0) {}
    ScalarMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    static ScalarMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ScalarMatrix transpose() const;
    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const ScalarMatrix& a, const ScalarMatrix& b) { return !(a == b); }

    bool is_identity() const;
    /// M^T M == I, exactly.
    bool is_orthogonal() const;

    /// Structural lexicographic order on (rows, cols, entries); deterministic
    /// tie-breaker for group element ordering.
    static int cmp(const ScalarMatrix& a, const ScalarMatrix& b);

private:
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

/// Solution of A x = b over Q(sqrt(D)).
///
/// `consistent == false` reports rank(A) < rank(A|b); this is a result, not an
/// error. The particular solution sets every free variable to zero and the
/// nullspace basis follows the reduced-echelon convention (one basis vector
/// per free column, unit entry in its own position), so results are
/// deterministic.
struct LinearSolution {
    bool consistent = false;
    std::vector<Scalar> particular;
    std::vector<std::vector<Scalar>> nullspace;
};

LinearSolution solve_linear(const ScalarMatrix& A, const std::vector<Scalar>& b);

} // namespace orbitstrata
