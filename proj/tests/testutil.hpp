#pragma once

// Shared helpers for the test suites: seeded random generators for scalars,
// polynomials, and symmetric matrices, plus small exact oracles.

#include <random>
#include <string>
#include <vector>

#include "orbitstrata/poly_matrix.hpp"
#include "orbitstrata/polynomial.hpp"
#include "orbitstrata/scalar.hpp"
#include "orbitstrata/scalar_matrix.hpp"

namespace testutil {

namespace os = orbitstrata;

inline std::string problem_path(const std::string& name) {
    return std::string(ORBITSTRATA_PROBLEM_DIR) + "/" + name;
}

inline os::Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    return os::Rational(num(rng), den(rng));
}

inline os::Scalar random_scalar(std::mt19937_64& rng, unsigned d, bool allow_radical = true) {
    const os::Rational a = random_rational(rng);
    if (d == 0 || !allow_radical || rng() % 2 == 0) return os::Scalar(a);
    return os::Scalar(a, random_rational(rng), d);
}

inline os::Scalar random_nonzero_scalar(std::mt19937_64& rng, unsigned d) {
    for (;;) {
        os::Scalar s = random_scalar(rng, d);
        if (!s.is_zero()) return s;
    }
}

inline os::Polynomial random_poly(std::mt19937_64& rng, const os::ContextPtr& ctx, unsigned d,
                                  int max_degree = 3, int max_terms = 6) {
    std::uniform_int_distribution<int> n_terms(0, max_terms);
    std::uniform_int_distribution<int> expo(0, max_degree);
    os::Polynomial p(ctx);
    const int terms = n_terms(rng);
    for (int t = 0; t < terms; ++t) {
        os::Monomial m(ctx->size());
        int budget = max_degree;
        for (std::size_t i = 0; i < ctx->size(); ++i) {
            const int e = std::min(budget, expo(rng));
            m[i] = static_cast<std::uint32_t>(e);
            budget -= e;
        }
        p.add_term(m, random_scalar(rng, d));
    }
    return p;
}

inline os::Polynomial random_nonzero_poly(std::mt19937_64& rng, const os::ContextPtr& ctx,
                                          unsigned d, int max_degree = 3, int max_terms = 6) {
    for (;;) {
        os::Polynomial p = random_poly(rng, ctx, d, max_degree, max_terms);
        if (!p.is_zero()) return p;
    }
}

// exact determinant oracle by Laplace expansion over Scalars
inline os::Scalar scalar_det(const os::ScalarMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    os::Scalar det(0);
    std::vector<std::size_t> rows;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        os::ScalarMatrix sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = m.at(i, c);
            }
        }
        const os::Scalar contrib = m.at(0, j) * scalar_det(sub);
        det = (j % 2 == 0) ? det + contrib : det - contrib;
    }
    return det;
}

// polynomial determinant oracle by Laplace expansion (independent of the
// Bareiss path in the library)
inline os::Polynomial poly_det_laplace(const os::PolyMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    os::Polynomial det(m.context());
    std::vector<std::size_t> rows;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < n; ++c)
            if (c != j) cols.push_back(c);
        const os::Polynomial contrib = m.at(0, j) * poly_det_laplace(m.submatrix(rows, cols));
        det = (j % 2 == 0) ? det + contrib : det - contrib;
    }
    return det;
}

inline std::vector<os::Scalar> random_point(std::mt19937_64& rng, std::size_t n, unsigned d = 0) {
    std::vector<os::Scalar> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) x.push_back(random_scalar(rng, d, d != 0));
    return x;
}

} // namespace testutil
