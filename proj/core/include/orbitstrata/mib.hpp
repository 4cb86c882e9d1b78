#pragma once

#include <string>
#include <vector>

#include "orbitstrata/poly_matrix.hpp"
#include "orbitstrata/polynomial.hpp"

namespace orbitstrata {

struct MibEntry {
    std::string name;
    int degree = 0;
    Polynomial poly;
};

/// Minimal integrity basis: an ordered list of homogeneous invariants with
/// declared degrees. Homogeneity against the declared degree is enforced on
/// construction.
class MIB {
public:
    MIB(ContextPtr vars, std::vector<MibEntry> entries);

    std::size_t size() const { return entries_.size(); }
    const MibEntry& entry(std::size_t i) const { return entries_[i]; }
    const std::vector<MibEntry>& entries() const { return entries_; }
    std::vector<int> degrees() const;

    /// Context of the source variables (x or v coordinates).
    const ContextPtr& var_context() const { return vars_; }
    /// Context whose variables are the basis element names (p or lambda).
    const ContextPtr& name_context() const { return names_; }

    /// Composes a polynomial in basis names with the basis, yielding a
    /// polynomial in the source variables.
    Polynomial compose(const Polynomial& in_names) const;

private:
    ContextPtr vars_;
    ContextPtr names_;
    std::vector<MibEntry> entries_;
};

/// Symmetric q x q matrix of gradient inner products in the source variables:
/// entry (a, b) = sum_j d(p_a)/dx_j * d(p_b)/dx_j.
PolyMatrix gradient_gram(const MIB& mib);

/// Outcome of expressing an invariant as a polynomial in the basis.
///
/// NonUnique keeps the deterministic particular solution (free coordinates
/// zero under the graded-lex candidate enumeration) and the syzygy directions
/// spanning the solution space. NotInRing reports that the input is not in
/// the ring generated by the basis.
struct Decomposition {
    enum class Status { Unique, NonUnique, NotInRing };
    Status status = Status::Unique;
    Polynomial expression;
    std::vector<Polynomial> syzygies;

    bool ok() const { return status != Status::NotInRing; }
};

Decomposition decompose_invariant(const Polynomial& q_poly, const MIB& mib);

/// P-hat matrix: the gradient Gram with every entry decomposed over the MIB.
struct PHatMatrix {
    MIB base;
    PolyMatrix mat; // symmetric, in the basis-name context
    std::vector<std::pair<std::size_t, std::size_t>> nonunique_entries;
};

/// Throws NotAnInvariantBasis when some Gram entry is not expressible over
/// the basis.
PHatMatrix pmatrix(const MIB& mib);

struct Relation {
    Polynomial poly; // in basis names, monic in the grlex leading term
    long weighted_degree = 0;
};

/// Degree-bounded relation search: kernel elements of the evaluation map per
/// weighted degree, reduced by previously found relations. An empty result
/// means the basis is coregular up to the bound.
std::vector<Relation> find_relations(const MIB& mib, long max_weighted_degree);

/// All monomials with the given weighted degree, in descending graded lex
/// order (bounded integer compositions, memoized).
std::vector<Monomial> weighted_monomials(const std::vector<int>& weights, long target);

} // namespace orbitstrata
