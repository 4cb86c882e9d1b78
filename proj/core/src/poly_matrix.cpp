#include "orbitstrata/poly_matrix.hpp"

#include "orbitstrata/errors.hpp"

namespace orbitstrata {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, const ContextPtr& ctx, bool symmetric)
    : rows_(rows), cols_(cols), ctx_(ctx), entries_(rows * cols, Polynomial::zero(ctx)),
      symmetric_(symmetric) {
    if (rows == 0 || cols == 0) throw Error(Error::Kind::Dimension, "empty matrix");
    if (symmetric && rows != cols)
        throw Error(Error::Kind::Dimension, "symmetric flag requires a square matrix");
}

void PolyMatrix::set(std::size_t i, std::size_t j, Polynomial p) {
    if (!same_context(p.context(), ctx_))
        throw Error(Error::Kind::ContextMismatch, "matrix entry context mismatch");
    entries_[i * cols_ + j] = p;
    if (symmetric_ && i != j) entries_[j * cols_ + i] = std::move(p);
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(cols_, rows_, ctx_, symmetric_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = at(i, j);
    return t;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(Error::Kind::Dimension, "matrix product shape mismatch");
    if (!same_context(a.ctx_, b.ctx_))
        throw Error(Error::Kind::ContextMismatch, "matrix product context mismatch");
    PolyMatrix r(a.rows_, b.cols_, a.ctx_, false);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            Polynomial acc(a.ctx_);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                acc += a.at(i, k) * b.at(k, j);
            }
            r.entries_[i * r.cols_ + j] = std::move(acc);
        }
    return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
        if (a.entries_[i] != b.entries_[i]) return false;
    return true;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                                 const std::vector<std::size_t>& col_idx) const {
    PolyMatrix s(row_idx.size(), col_idx.size(), ctx_, false);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j)
            s.entries_[i * col_idx.size() + j] = at(row_idx[i], col_idx[j]);
    return s;
}

PolyMatrix PolyMatrix::substitute(const std::vector<Polynomial>& assignment) const {
    const ContextPtr target =
        assignment.empty() ? ctx_ : assignment.front().context();
    PolyMatrix r(rows_, cols_, target, symmetric_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r.entries_[i * cols_ + j] = at(i, j).substitute(assignment);
    return r;
}

bool PolyMatrix::check_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

namespace {

Polynomial det_cofactor(const PolyMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    Polynomial det(m.context());
    std::vector<std::size_t> rows(n - 1);
    for (std::size_t i = 1; i < n; ++i) rows[i - 1] = i;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        std::vector<std::size_t> cols;
        cols.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c)
            if (c != j) cols.push_back(c);
        Polynomial minor = det_cofactor(m.submatrix(rows, cols));
        Polynomial contrib = m.at(0, j) * minor;
        det = (j % 2 == 0) ? det + contrib : det - contrib;
    }
    return det;
}

// Fraction-free Bareiss elimination. Works over any integral domain; every
// division by the previous pivot is exact, verified via divide_exact.
Polynomial det_bareiss(const PolyMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n, Polynomial(m.context())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);

    Polynomial prev = Polynomial::constant(m.context(), Scalar(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Polynomial(m.context()); // singular
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                auto q = divide_exact(num, prev);
                if (!q)
                    throw Error(Error::Kind::Internal,
                                "Bareiss elimination: inexact pivot division");
                a[i][j] = std::move(*q);
            }
            a[i][k] = Polynomial(m.context());
        }
        prev = a[k][k];
    }
    Polynomial det = a[n - 1][n - 1];
    return sign == 1 ? det : -det;
}

} // namespace

Polynomial polymat_det(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(Error::Kind::NotSquare, "determinant of a non-square matrix");
    if (m.rows() <= 4) return det_cofactor(m);
    return det_bareiss(m);
}

std::vector<Polynomial> leading_principal_minors(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(Error::Kind::NotSquare, "principal minors of a non-square matrix");
    std::vector<Polynomial> minors;
    minors.reserve(m.rows());
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < m.rows(); ++k) {
        idx.push_back(k);
        minors.push_back(polymat_det(m.submatrix(idx, idx)));
    }
    return minors;
}

std::vector<Polynomial> maximal_minors(const PolyMatrix& m) {
    const bool wide = m.cols() >= m.rows();
    const std::size_t k = wide ? m.rows() : m.cols();
    const std::size_t n = wide ? m.cols() : m.rows();
    std::vector<std::size_t> full(k);
    for (std::size_t i = 0; i < k; ++i) full[i] = i;

    std::vector<Polynomial> minors;
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        minors.push_back(wide ? polymat_det(m.submatrix(full, comb))
                              : polymat_det(m.submatrix(comb, full)));
        // next combination in lexicographic order
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (comb[i] != i + n - k) break;
            if (i == 0) return minors;
        }
        if (comb[i] == i + n - k) return minors;
        ++comb[i];
        for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
}

} // namespace orbitstrata
