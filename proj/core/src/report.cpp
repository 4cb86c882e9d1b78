#include "orbitstrata/report.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orbitstrata/errors.hpp"
#include "orbitstrata/expr.hpp"

namespace orbitstrata {

namespace {

using nlohmann::json;

std::string rational_string(const Rational& q) {
    std::ostringstream out;
    out << numerator(q);
    if (denominator(q) != 1) out << "/" << denominator(q);
    return out.str();
}

json scalar_json(const Scalar& s) {
    json j;
    j["text"] = render_scalar(s);
    j["a"] = rational_string(s.rational_part());
    j["b"] = rational_string(s.radical_part());
    j["d"] = s.field();
    return j;
}

json poly_json(const Polynomial& p) {
    json j;
    j["text"] = render_poly(p);
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["exponents"] = m;
        t["coeff"] = scalar_json(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

json poly_matrix_json(const PolyMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(poly_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json scalar_matrix_json(const ScalarMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(render_scalar(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json signature_json(const StratumSignature& sig) {
    json j;
    j["rank"] = sig.rank;
    j["psd"] = sig.psd;
    j["eigenvalues"] = sig.eigenvalues;
    j["tolerance"] = sig.tolerance;
    return j;
}

} // namespace

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Kind::Io, "cannot open file for digest: " + path);
    std::uint64_t hash = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << hash;
    return out.str();
}

std::string make_report(const std::string& command, const std::string& input_path,
                        const std::string& digest, const std::string& results_json,
                        const std::vector<std::string>& diagnostics,
                        const ReportTimings& timings) {
    json j;
    j["command"] = command;
    j["inputs"] = {{"problem", input_path}, {"digest", digest}};
    j["results"] = json::parse(results_json);
    j["diagnostics"] = diagnostics;
    json t;
    for (const auto& [name, ms] : timings.stages_ms) t[name] = ms;
    j["timings"] = std::move(t);
    return j.dump(2) + "\n";
}

std::string pmatrix_results_json(const PHatMatrix& phat, bool euler_applicable,
                                 bool euler_holds,
                                 const std::vector<Polynomial>& minor_sums) {
    json j;
    j["q"] = phat.mat.rows();
    j["degrees"] = phat.base.degrees();
    j["names"] = phat.base.name_context()->names();
    j["entries"] = poly_matrix_json(phat.mat);
    json nonunique = json::array();
    for (auto [a, b] : phat.nonunique_entries) nonunique.push_back({a + 1, b + 1});
    j["nonunique_entries"] = std::move(nonunique);
    json euler;
    euler["applicable"] = euler_applicable;
    if (euler_applicable) euler["holds"] = euler_holds;
    j["euler_row_check"] = std::move(euler);
    json sums = json::array();
    for (const auto& m : minor_sums) sums.push_back(poly_json(m));
    j["minor_sums"] = std::move(sums);
    return j.dump();
}

std::string relations_results_json(const std::vector<Relation>& relations,
                                   long max_weighted_degree) {
    json j;
    j["max_weighted_degree"] = max_weighted_degree;
    json rels = json::array();
    for (const auto& r : relations) {
        json e = poly_json(r.poly);
        e["weighted_degree"] = r.weighted_degree;
        rels.push_back(std::move(e));
    }
    j["relations"] = std::move(rels);
    j["coregular_up_to_bound"] = relations.empty();
    return j.dump();
}

std::string stratum_results_json(const Parametrization& par, std::size_t job_index) {
    json j;
    j["job"] = job_index;
    j["v"] = {{"dimension", par.v.dim()},
              {"labels", par.v.labels},
              {"basis_columns", scalar_matrix_json(par.v.basis)}};
    json lmib = json::array();
    for (const auto& e : par.lambda_mib.entries())
        lmib.push_back({{"name", e.name}, {"degree", e.degree}, {"expr", render_poly(e.poly)}});
    j["lambda_mib"] = std::move(lmib);
    json restricted = json::array();
    for (const auto& p : par.p_restricted) restricted.push_back(poly_json(p));
    j["p_restricted"] = std::move(restricted);
    json phi = json::array();
    for (const auto& p : par.phi) phi.push_back(poly_json(p));
    j["phi"] = std::move(phi);
    j["lambda_hat"] = poly_matrix_json(par.lambda_hat);
    j["jacobian"] = poly_matrix_json(par.jac);
    json fact;
    fact["holds"] = par.factorization.holds;
    json mm = json::array();
    for (auto [a, b] : par.factorization.mismatches) mm.push_back({a + 1, b + 1});
    fact["mismatches"] = std::move(mm);
    j["factorization"] = std::move(fact);
    json relcheck;
    relcheck["all_vanish"] = par.relation_check.all_vanish;
    json residuals = json::array();
    for (const auto& [idx, poly] : par.relation_check.residuals) {
        json r = poly_json(poly);
        r["relation_index"] = idx;
        residuals.push_back(std::move(r));
    }
    relcheck["residuals"] = std::move(residuals);
    j["relations_on_phi"] = std::move(relcheck);
    json delta;
    delta["dimension"] = par.delta.dimension;
    json minors = json::array();
    for (const auto& m : par.delta.leading_minors) minors.push_back(poly_json(m));
    delta["leading_minors"] = std::move(minors);
    json jm = json::array();
    for (const auto& m : par.delta.jacobian_minors) jm.push_back(poly_json(m));
    delta["jacobian_minors"] = std::move(jm);
    j["delta"] = std::move(delta);
    j["coregular_K"] = par.coregular_k;
    json lrels = json::array();
    for (const auto& r : par.lambda_relations) {
        json e = poly_json(r.poly);
        e["weighted_degree"] = r.weighted_degree;
        lrels.push_back(std::move(e));
    }
    j["lambda_relations"] = std::move(lrels);
    return j.dump();
}

std::string verify_results_json(const Polynomial& det, const std::vector<FactorCheck>& factors,
                                const std::vector<std::pair<std::size_t, bool>>& job_relation_checks) {
    json j;
    j["det_phat"] = poly_json(det);
    json fs = json::array();
    for (const auto& f : factors) {
        json e;
        e["factor"] = poly_json(f.factor);
        e["divides"] = f.divides;
        if (f.divides) e["quotient"] = poly_json(f.quotient);
        fs.push_back(std::move(e));
    }
    j["candidate_factors"] = std::move(fs);
    json jobs = json::array();
    for (const auto& [idx, ok] : job_relation_checks)
        jobs.push_back({{"job", idx}, {"relations_vanish_on_phi", ok}});
    j["jobs"] = std::move(jobs);
    return j.dump();
}

std::string classify_results_json(const PointClassification& cls) {
    json j;
    json pv = json::array();
    for (const auto& s : cls.p_values) {
        json e = scalar_json(s);
        e["value"] = s.to_double();
        pv.push_back(std::move(e));
    }
    j["p_values"] = std::move(pv);
    j["signature"] = signature_json(cls.signature);
    return j.dump();
}

std::string probe_results_json(const ProbeReport& probe, std::size_t job_index,
                               const std::vector<std::pair<double, double>>& box, long samples,
                               std::uint64_t seed) {
    json j;
    j["job"] = job_index;
    json b = json::array();
    for (const auto& [lo, hi] : box) b.push_back({lo, hi});
    j["box"] = std::move(b);
    j["samples"] = samples;
    j["seed"] = seed;
    j["tested"] = probe.tested;
    j["in_region"] = probe.in_region;
    j["min_rank"] = probe.min_rank;
    j["required_rank"] = probe.required_rank;
    j["rank_deficient_points"] = probe.rank_deficient_points;
    j["exact_shortcut"] = probe.exact_shortcut;
    return j.dump();
}

} // namespace orbitstrata
