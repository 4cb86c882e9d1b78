#pragma once

#include <string>
#include <vector>

#include "orbitstrata/scalar_matrix.hpp"

namespace orbitstrata {

/// Validates exact orthogonality (M^T M = I); throws Validation otherwise.
void ensure_orthogonal(const ScalarMatrix& m, const std::string& what = "matrix");

/// Finite matrix group as an explicit element list in deterministic order:
/// identity first, then breadth-first over generator words, each level sorted
/// by lexicographic entry comparison.
struct FiniteGroup {
    std::vector<ScalarMatrix> elements;
    std::vector<std::size_t> generator_indices;

    std::size_t order() const { return elements.size(); }
    std::size_t dim() const { return elements.empty() ? 0 : elements.front().rows(); }
    bool contains(const ScalarMatrix& m) const;

    static FiniteGroup trivial(std::size_t n);
};

/// Breadth-first closure of orthogonal generators under multiplication.
/// Throws CapExceeded when the closure grows past `cap` (continuous or
/// too-large group; the caller must supply derived data directly).
FiniteGroup close_group(const std::vector<ScalarMatrix>& generators, std::size_t cap);

/// Orthonormal basis of a linear subspace of R^n, with display labels for the
/// induced v-coordinates.
struct SubspaceBasis {
    ScalarMatrix basis; // n x nu, columns orthonormal
    std::vector<std::string> labels;

    std::size_t ambient_dim() const { return basis.rows(); }
    std::size_t dim() const { return basis.cols(); }
};

/// Fixed-point subspace V = {x | h x = x for all h in H}, exactly.
///
/// The nullspace basis is orthonormalized: coordinate-aligned bases are kept
/// as unit coordinate vectors; otherwise Gram-Schmidt runs over Q(sqrt(D))
/// and NonRationalBasis is thrown when a norm has no square root in the
/// field. `field_d` names the ambient field for those square roots.
SubspaceBasis fix_subspace(const FiniteGroup& h, unsigned field_d);

/// Isotropy subgroup {g in G | g x = x} at an exact point.
FiniteGroup isotropy_at(const FiniteGroup& g, const std::vector<Scalar>& x);

/// Stab(H, G) = {g in G | g H g^-1 = H}. Throws NotASubgroup when H is not
/// contained in G elementwise.
FiniteGroup stabilizer(const FiniteGroup& g, const FiniteGroup& h);

/// The group K induced on V: each element of `stab` restricted to V in the
/// given basis, duplicates removed (K is isomorphic to Stab(H,G)/H). Throws
/// NotStable when some element maps V outside itself.
FiniteGroup induced_action(const FiniteGroup& stab, const FiniteGroup& h,
                           const SubspaceBasis& v);

struct OrbitTypeOrder {
    bool leq = false;    // exists g in G with g H g^-1 contained in K
    bool strict = false; // leq and |H| < |K|
};

OrbitTypeOrder orbit_type_leq(const FiniteGroup& h, const FiniteGroup& k, const FiniteGroup& g);

} // namespace orbitstrata
