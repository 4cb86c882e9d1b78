#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitstrata/groups.hpp"
#include "orbitstrata/mib.hpp"
#include "orbitstrata/poly_matrix.hpp"

namespace orbitstrata {

/// How a stratum's fixed space V is specified: generators of the isotropy
/// group H, a zero-coordinate list (V = {x | x_i = 0, i in list}, 1-based),
/// or an explicit orthonormal basis.
struct SubspaceSpec {
    enum class Form { Generators, ZeroCoords, Basis };
    Form form = Form::ZeroCoords;
    std::vector<ScalarMatrix> generators;
    std::vector<std::size_t> zero_coords; // 1-based coordinate indices
    std::optional<SubspaceBasis> basis;
};

/// Resolves a subspace spec to an orthonormal basis of V inside R^n.
/// Coordinate-aligned basis vectors inherit the ambient variable names as
/// labels; anything else is labeled v1..v_nu.
SubspaceBasis resolve_subspace(const SubspaceSpec& spec, std::size_t n,
                               const std::vector<std::string>& x_names, unsigned field_d);

/// Restriction of the MIB to V: each p_a composed with the inclusion
/// x = B v, expressed in the v-variables named by the basis labels.
std::vector<Polynomial> restrict_mib(const MIB& mib, const SubspaceBasis& v);

struct PhiResult {
    std::vector<Polynomial> phi; // one polynomial in lambda per basis element
    std::vector<std::size_t> nonunique_entries;
};

/// Expresses each restricted invariant over the lambda-MIB. Throws
/// LambdaNotGenerating (naming the offending p_a) when the lambda set does
/// not generate the ring of K-invariants.
PhiResult compute_phi(const std::vector<Polynomial>& p_restricted, const MIB& lambda_mib,
                      const std::vector<std::string>& p_names);

/// Jacobian J with J(alpha, a) = d phi_a / d lambda_alpha (l x q).
PolyMatrix jacobian(const std::vector<Polynomial>& phi);

struct FactorizationReport {
    bool holds = false;
    std::vector<std::pair<std::size_t, std::size_t>> mismatches;
};

/// Exact check of P-hat(phi(lambda)) == J^T Lambda-hat J, entrywise.
FactorizationReport verify_factorization(const PHatMatrix& phat,
                                         const std::vector<Polynomial>& phi,
                                         const PolyMatrix& lambda_hat, const PolyMatrix& jac);

struct RelationCheck {
    bool all_vanish = true;
    std::vector<std::pair<std::size_t, Polynomial>> residuals; // index into the relation list
};

/// Composes each relation with phi and reports non-vanishing residuals.
RelationCheck verify_relations_on_phi(const std::vector<Polynomial>& relations,
                                      const std::vector<Polynomial>& phi);

/// Semialgebraic description of Delta: the leading principal minors of
/// Lambda-hat as strict inequalities plus the rank condition "not all l x l
/// minors of J vanish".
struct RegionDescription {
    std::vector<Polynomial> leading_minors;
    std::vector<Polynomial> jacobian_minors;
    std::size_t dimension = 0;
};

RegionDescription delta_region(const PolyMatrix& lambda_hat, const PolyMatrix& jac);

struct ProbeReport {
    long tested = 0;
    long in_region = 0;
    int min_rank = 0;
    int required_rank = 0;
    std::vector<std::vector<double>> rank_deficient_points;
    bool exact_shortcut = false; // some l x l minor of J is a nonzero constant
};

/// Seeded sampling probe for the connectivity criterion: every in-region
/// sample is checked for numeric rank(J) = l. Throws EmptySample when no
/// point passes the region test. `threads <= 0` means use ORBITSTRATA_THREADS
/// or the hardware concurrency.
ProbeReport connectivity_probe(const RegionDescription& region, const PolyMatrix& jac,
                               const std::vector<std::pair<double, double>>& box, long samples,
                               std::uint64_t seed, double region_tol = 1e-9,
                               double rank_tol = 1e-9, int threads = 0);

/// Full parametrization bundle for one singular stratum.
struct Parametrization {
    SubspaceBasis v;
    MIB lambda_mib;
    std::vector<Polynomial> p_restricted;
    std::vector<Polynomial> phi;
    PolyMatrix lambda_hat;
    PolyMatrix jac;
    RegionDescription delta;
    bool coregular_k = true;
    std::vector<Relation> lambda_relations;
    FactorizationReport factorization;
    RelationCheck relation_check;
    std::vector<std::string> diagnostics;

    Parametrization(MIB lm, PolyMatrix lh, PolyMatrix j)
        : lambda_mib(std::move(lm)), lambda_hat(std::move(lh)), jac(std::move(j)) {}
};

struct ParametrizeOptions {
    long lambda_relation_bound = 0; // 0: use 2 * max lambda degree
};

/// Runs the full pipeline: restrict -> phi -> Lambda-hat -> J -> exact
/// factorization check -> relation vanishing -> Delta. Every stage error is
/// tagged with its stage name. The factorization result is data; callers
/// decide whether a mismatch is fatal.
Parametrization parametrize_stratum(const MIB& mib, const PHatMatrix& phat,
                                    const std::vector<Polynomial>& relations,
                                    const SubspaceSpec& subspace, const MIB& lambda_mib,
                                    unsigned field_d, const ParametrizeOptions& opts = {});

} // namespace orbitstrata
