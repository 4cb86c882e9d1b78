#pragma once

#include <vector>

#include "orbitstrata/polynomial.hpp"

namespace orbitstrata {

/// Rectangular matrix of polynomials sharing one variable context.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols, const ContextPtr& ctx, bool symmetric = false);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool symmetric() const { return symmetric_; }
    const ContextPtr& context() const { return ctx_; }

    const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    /// Assigns entry (i, j), mirroring to (j, i) when the symmetric flag is set.
    void set(std::size_t i, std::size_t j, Polynomial p);

    PolyMatrix transpose() const;
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    PolyMatrix submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const;

    /// Entrywise composition with an assignment for the shared context.
    PolyMatrix substitute(const std::vector<Polynomial>& assignment) const;

    bool check_symmetric() const; // exact entrywise check

private:
    std::size_t rows_, cols_;
    ContextPtr ctx_;
    std::vector<Polynomial> entries_;
    bool symmetric_;
};

/// Exact determinant. Cofactor expansion up to 4x4; fraction-free Bareiss
/// elimination (divisions exact by construction) for larger matrices.
Polynomial polymat_det(const PolyMatrix& m);

/// Leading principal minors det(M[0..k, 0..k]) for k = 1..n.
std::vector<Polynomial> leading_principal_minors(const PolyMatrix& m);

/// All k x k minors taken from `k` rows/cols chosen among a matrix with the
/// smaller dimension equal to k: for an l x q matrix with l <= q, the C(q, l)
/// maximal minors (column subsets in lexicographic order).
std::vector<Polynomial> maximal_minors(const PolyMatrix& m);

} // namespace orbitstrata
