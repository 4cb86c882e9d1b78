#include "orbitstrata/scalar_matrix.hpp"

#include "orbitstrata/errors.hpp"

namespace orbitstrata {

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
    ScalarMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(Error::Kind::Dimension, "matrix product shape mismatch");
    ScalarMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

std::vector<Scalar> ScalarMatrix::apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw Error(Error::Kind::Dimension, "matrix-vector shape mismatch");
    std::vector<Scalar> r(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

bool ScalarMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

bool ScalarMatrix::is_orthogonal() const {
    if (rows_ != cols_) return false;
    return (transpose() * *this).is_identity();
}

int ScalarMatrix::cmp(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        const int c = Scalar::cmp(a.data_[i], b.data_[i]);
        if (c != 0) return c;
    }
    return 0;
}

LinearSolution solve_linear(const ScalarMatrix& A, const std::vector<Scalar>& b) {
    if (b.size() != A.rows())
        throw Error(Error::Kind::Dimension, "solve_linear: rhs length must equal row count");
    const std::size_t rows = A.rows(), cols = A.cols();

    // Gauss-Jordan to reduced row echelon on the augmented system; pivot is
    // the first nonzero entry in column order.
    ScalarMatrix M = A;
    std::vector<Scalar> rhs = b;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && M.at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(M.at(piv, j), M.at(rank, j));
            std::swap(rhs[piv], rhs[rank]);
        }
        const Scalar inv = M.at(rank, col).inverse();
        for (std::size_t j = col; j < cols; ++j) M.at(rank, j) *= inv;
        rhs[rank] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || M.at(i, col).is_zero()) continue;
            const Scalar factor = M.at(i, col);
            for (std::size_t j = col; j < cols; ++j)
                M.at(i, j) -= factor * M.at(rank, j);
            rhs[i] -= factor * rhs[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    LinearSolution sol;
    for (std::size_t i = rank; i < rows; ++i) {
        if (!rhs[i].is_zero()) {
            sol.consistent = false;
            return sol;
        }
    }
    sol.consistent = true;

    sol.particular.assign(cols, Scalar(0));
    for (std::size_t k = 0; k < rank; ++k) sol.particular[pivot_col[k]] = rhs[k];

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < rank; ++k) v[pivot_col[k]] = -M.at(k, f);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

} // namespace orbitstrata
