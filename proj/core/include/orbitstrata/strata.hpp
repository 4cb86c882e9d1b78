#pragma once

#include <cstdint>
#include <vector>

#include "orbitstrata/mib.hpp"
#include "orbitstrata/poly_matrix.hpp"

namespace orbitstrata {

/// Dense double-precision matrix; the symmetric flag means the matrix was
/// symmetrized on construction (entries (i,j) and (j,i) bit-identical).
struct FloatMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;
    bool symmetric = false;

    FloatMatrix() = default;
    FloatMatrix(std::size_t r, std::size_t c, bool sym = false)
        : rows(r), cols(c), data(r * c, 0.0), symmetric(sym) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Eigenvalues of a symmetric matrix, ascending, via cyclic Jacobi rotations
/// (deterministic sweep order) until the off-diagonal Frobenius norm drops
/// below `tol`. Throws NoConvergence after 100 sweeps.
std::vector<double> sym_eigen(FloatMatrix s, double tol);

/// Rank/positivity signature extracted from an eigenvalue list with a
/// scale-aware threshold: eigenvalues above tol * max(1, |largest|) count
/// toward the rank.
struct StratumSignature {
    int rank = 0;
    bool psd = false;
    std::vector<double> eigenvalues;
    double tolerance = 0.0;
};

StratumSignature signature_from_eigenvalues(std::vector<double> eigenvalues, double tol);

/// Exact sums of order-i principal minors, i = 1..q (M_1 is the trace and
/// M_q the determinant).
std::vector<Polynomial> minor_sums(const PolyMatrix& m);

/// Stratum signature of a point: the gradient Gram evaluated exactly at x,
/// converted to floats once, then eigensolved.
struct PointClassification {
    std::vector<Scalar> p_values;
    StratumSignature signature;
};

PointClassification classify_point_x(const std::vector<Scalar>& x, const MIB& mib, double tol);

struct MembershipReport {
    bool member = false;
    int rank = 0;
    std::vector<double> relation_residuals;
    StratumSignature signature;
};

/// Approximate orbit-space membership test: all relation residuals below
/// `tol_variety` and smallest eigenvalue of P-hat above -tol_psd (scaled).
MembershipReport orbit_space_membership(const std::vector<double>& p_point,
                                        const PHatMatrix& phat,
                                        const std::vector<Polynomial>& relations,
                                        double tol_variety, double tol_psd);

/// Seeded uniform box sampling filtered by strict inequalities (> tol).
/// Point i is derived from (seed, i) alone, so results are deterministic and
/// order-independent.
struct SampleResult {
    std::vector<std::vector<double>> points; // accepted points
    long tested = 0;
};

SampleResult sample_region(const std::vector<Polynomial>& strict_positive,
                           const std::vector<std::pair<double, double>>& box, long n,
                           std::uint64_t seed, double tol = 0.0);

/// The sample point for index i under the given seed (exposed so that
/// threaded consumers reproduce sample_region exactly).
std::vector<double> sample_point(const std::vector<std::pair<double, double>>& box, long index,
                                 std::uint64_t seed);

} // namespace orbitstrata
