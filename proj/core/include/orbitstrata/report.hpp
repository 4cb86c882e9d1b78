#pragma once

#include <string>
#include <vector>

#include "orbitstrata/mib.hpp"
#include "orbitstrata/parametrize.hpp"
#include "orbitstrata/strata.hpp"

namespace orbitstrata {

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<hex>".
std::string file_digest(const std::string& path);

struct ReportTimings {
    std::vector<std::pair<std::string, double>> stages_ms;
};

/// Wraps pre-serialized results into the common report envelope
/// {command, inputs, results, diagnostics, timings} and returns pretty JSON.
std::string make_report(const std::string& command, const std::string& input_path,
                        const std::string& digest, const std::string& results_json,
                        const std::vector<std::string>& diagnostics,
                        const ReportTimings& timings);

// Per-command result serializers (JSON object strings). Each polynomial is
// emitted both as its canonical string and as a structured term list.
std::string pmatrix_results_json(const PHatMatrix& phat, bool euler_applicable,
                                 bool euler_holds,
                                 const std::vector<Polynomial>& minor_sums = {});
std::string relations_results_json(const std::vector<Relation>& relations,
                                   long max_weighted_degree);
std::string stratum_results_json(const Parametrization& par, std::size_t job_index);
struct FactorCheck {
    Polynomial factor;
    bool divides = false;
    Polynomial quotient;
};
std::string verify_results_json(const Polynomial& det, const std::vector<FactorCheck>& factors,
                                const std::vector<std::pair<std::size_t, bool>>& job_relation_checks);
std::string classify_results_json(const PointClassification& cls);
std::string probe_results_json(const ProbeReport& probe, std::size_t job_index,
                               const std::vector<std::pair<double, double>>& box, long samples,
                               std::uint64_t seed);

} // namespace orbitstrata
