#include "orbitstrata/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orbitstrata/errors.hpp"
#include "orbitstrata/expr.hpp"
#include "orbitstrata/groups.hpp"

namespace orbitstrata {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw Error(Error::Kind::Schema, "problem file: " + field + ": " + what);
}

const json& require_field(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) schema_error(where + "." + key, "missing");
    return *it;
}

bool is_square_free(unsigned d) {
    for (unsigned f = 2; f * f <= d; ++f)
        if (d % (f * f) == 0) return false;
    return true;
}

ScalarMatrix parse_matrix(const json& j, unsigned d, const std::string& where) {
    if (!j.is_array() || j.empty()) schema_error(where, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) schema_error(where, "expected rows of expression strings");
    ScalarMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            schema_error(where, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[i][c].is_string()) schema_error(where, "matrix entries must be strings");
            m.at(i, c) = parse_scalar(j[i][c].get<std::string>(), d);
        }
    }
    return m;
}

MIB parse_mib(const json& entries, const ContextPtr& vars, unsigned d, const std::string& where) {
    if (!entries.is_array() || entries.empty())
        schema_error(where, "expected a non-empty array of basis entries");
    std::vector<MibEntry> out;
    for (const auto& e : entries) {
        MibEntry entry;
        entry.name = require_field(e, "name", where).get<std::string>();
        entry.degree = require_field(e, "degree", where).get<int>();
        const std::string expr = require_field(e, "expr", where).get<std::string>();
        entry.poly = parse_poly(expr, vars, d);
        out.push_back(std::move(entry));
    }
    return MIB(vars, std::move(out)); // homogeneity validated by the MIB constructor
}

SubspaceSpec parse_subspace(const json& j, unsigned d) {
    SubspaceSpec spec;
    if (j.contains("zero_coords")) {
        spec.form = SubspaceSpec::Form::ZeroCoords;
        for (const auto& v : j["zero_coords"]) spec.zero_coords.push_back(v.get<std::size_t>());
        return spec;
    }
    if (j.contains("generators")) {
        spec.form = SubspaceSpec::Form::Generators;
        for (std::size_t i = 0; i < j["generators"].size(); ++i) {
            ScalarMatrix g = parse_matrix(j["generators"][i], d,
                                          "strata_jobs.subspace.generators[" +
                                              std::to_string(i) + "]");
            ensure_orthogonal(g, "subspace generator " + std::to_string(i));
            spec.generators.push_back(std::move(g));
        }
        if (spec.generators.empty())
            schema_error("strata_jobs.subspace.generators", "must not be empty");
        return spec;
    }
    if (j.contains("basis")) {
        spec.form = SubspaceSpec::Form::Basis;
        const json& b = j["basis"];
        ScalarMatrix vectors =
            parse_matrix(require_field(b, "vectors", "strata_jobs.subspace.basis"), d,
                         "strata_jobs.subspace.basis.vectors");
        // rows are basis vectors; store as columns
        SubspaceBasis basis{vectors.transpose(), {}};
        if (b.contains("labels"))
            for (const auto& l : b["labels"]) basis.labels.push_back(l.get<std::string>());
        spec.basis = std::move(basis);
        return spec;
    }
    schema_error("strata_jobs.subspace", "expected zero_coords, generators, or basis");
}

// cheap random-point probe before the exact composition check, so a wrong
// relation fails fast on large bases
bool spot_check_vanishes(const Polynomial& relation, const MIB& mib) {
    std::uint64_t state = 0x5bd1e995u;
    auto next_small = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<long>((state >> 33) % 19) - 9;
    };
    const std::size_t n = mib.var_context()->size();
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Scalar> x;
        x.reserve(n);
        for (std::size_t i = 0; i < n; ++i) x.emplace_back(next_small());
        std::vector<Scalar> p_vals;
        p_vals.reserve(mib.size());
        for (const auto& e : mib.entries()) p_vals.push_back(e.poly.evaluate(x));
        if (!relation.evaluate(p_vals).is_zero()) return false;
    }
    return true;
}

ProblemSpec parse_problem_json(const json& doc, const std::string& origin) {
    ProblemSpec spec;
    spec.name = doc.contains("name") ? doc["name"].get<std::string>() : origin;

    const json& field_d = require_field(doc, "field_D", "problem");
    if (!field_d.is_number_unsigned()) schema_error("field_D", "expected a non-negative integer");
    spec.field_d = field_d.get<unsigned>();
    if (spec.field_d == 1 || !is_square_free(spec.field_d))
        throw Error(Error::Kind::Validation,
                    "field_D must be 0 or a square-free integer >= 2, got " +
                        std::to_string(spec.field_d));

    const json& xv = require_field(doc, "x_vars", "problem");
    std::vector<std::string> names;
    for (const auto& v : xv) names.push_back(v.get<std::string>());
    if (names.empty()) schema_error("x_vars", "must not be empty");
    spec.x_vars = make_context(names);

    spec.mib = parse_mib(require_field(doc, "mib", "problem"), spec.x_vars, spec.field_d, "mib");

    if (doc.contains("relations")) {
        for (const auto& r : doc["relations"]) {
            Polynomial rel =
                parse_poly(r.get<std::string>(), spec.mib->name_context(), spec.field_d);
            if (!spot_check_vanishes(rel, *spec.mib) || !spec.mib->compose(rel).is_zero())
                throw Error(Error::Kind::Validation,
                            "declared relation does not vanish on the basis: " +
                                r.get<std::string>());
            spec.relations.push_back(std::move(rel));
        }
    }

    if (doc.contains("candidate_factors")) {
        for (const auto& f : doc["candidate_factors"])
            spec.candidate_factors.push_back(
                parse_poly(f.get<std::string>(), spec.mib->name_context(), spec.field_d));
    }

    if (doc.contains("group")) {
        const json& gens = require_field(doc["group"], "generators", "group");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            ScalarMatrix g =
                parse_matrix(gens[i], spec.field_d, "group.generators[" + std::to_string(i) + "]");
            if (g.rows() != spec.x_vars->size())
                throw Error(Error::Kind::Validation, "group generator " + std::to_string(i) +
                                                         " has wrong dimension");
            ensure_orthogonal(g, "group generator " + std::to_string(i));
            spec.group_generators.push_back(std::move(g));
        }
    }

    if (doc.contains("strata_jobs")) {
        for (const auto& job : doc["strata_jobs"]) {
            SubspaceSpec subspace =
                parse_subspace(require_field(job, "subspace", "strata_jobs"), spec.field_d);
            const json& lm = require_field(job, "lambda_mib", "strata_jobs");
            std::vector<std::string> lvars;
            for (const auto& v : require_field(lm, "vars", "strata_jobs.lambda_mib"))
                lvars.push_back(v.get<std::string>());
            MIB lambda = parse_mib(require_field(lm, "entries", "strata_jobs.lambda_mib"),
                                   make_context(lvars), spec.field_d,
                                   "strata_jobs.lambda_mib.entries");
            spec.strata_jobs.push_back(StrataJob{std::move(subspace), std::move(lambda)});
        }
    }

    return spec;
}

} // namespace

ProblemSpec parse_problem(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Error::Kind::Schema, origin + ": invalid JSON: " + e.what());
    }
    return parse_problem_json(doc, origin);
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Kind::Io, "cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), path);
}

} // namespace orbitstrata
