#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitstrata/mib.hpp"
#include "orbitstrata/parametrize.hpp"

namespace orbitstrata {

struct StrataJob {
    SubspaceSpec subspace;
    MIB lambda_mib;
};

/// Fully parsed and validated problem file.
struct ProblemSpec {
    std::string name;
    unsigned field_d = 0;
    ContextPtr x_vars;
    std::optional<MIB> mib; // always present after load; optional for staged construction
    std::vector<Polynomial> relations;          // in basis names, verified to vanish
    std::vector<Polynomial> candidate_factors;  // in basis names
    std::vector<ScalarMatrix> group_generators; // orthogonal, validated
    std::vector<StrataJob> strata_jobs;
};

/// Loads and validates a problem file (JSON). Schema violations throw
/// Error::Kind::Schema with the offending field; semantic failures
/// (non-homogeneous entries, non-orthogonal generators, relations that do not
/// vanish) throw Error::Kind::Validation with a diagnostic.
ProblemSpec load_problem(const std::string& path);

/// Same, from an in-memory JSON document (used by tests).
ProblemSpec parse_problem(const std::string& json_text, const std::string& origin = "<memory>");

} // namespace orbitstrata
