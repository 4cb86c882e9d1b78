// orbitstrata command-line driver: orbit-space stratification toolkit.
//
// Exit codes: 0 success, 1 verification failed, 2 input error,
// 3 internal cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitstrata/errors.hpp"
#include "orbitstrata/expr.hpp"
#include "orbitstrata/problem.hpp"
#include "orbitstrata/report.hpp"
#include "orbitstrata/strata.hpp"

namespace os = orbitstrata;

namespace {

class StageTimer {
public:
    void start(const std::string& name) {
        name_ = name;
        t0_ = std::chrono::steady_clock::now();
    }
    void stop() {
        const auto t1 = std::chrono::steady_clock::now();
        timings_.stages_ms.emplace_back(
            name_, std::chrono::duration<double, std::milli>(t1 - t0_).count());
    }
    os::ReportTimings finish() {
        double total = 0;
        for (const auto& [n, ms] : timings_.stages_ms) total += ms;
        timings_.stages_ms.emplace_back("total", total);
        return timings_;
    }

private:
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
    os::ReportTimings timings_;
};

void emit(const std::string& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw os::Error(os::Error::Kind::Io, "cannot write report to " + out_path);
    out << report;
}

int exit_code_for(const os::Error& e) {
    switch (e.kind()) {
        case os::Error::Kind::VerificationFailed:
            return 1;
        case os::Error::Kind::CapExceeded:
        case os::Error::Kind::NoConvergence:
            return 3;
        default:
            return 2;
    }
}

std::vector<os::Scalar> parse_point(const std::string& text, unsigned d) {
    std::vector<os::Scalar> point;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) point.push_back(os::parse_scalar(part, d));
    return point;
}

std::vector<std::pair<double, double>> parse_box(const std::string& text) {
    std::vector<std::pair<double, double>> box;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw os::Error(os::Error::Kind::Validation,
                            "box intervals must look like lo:hi, got '" + part + "'");
        box.emplace_back(std::stod(part.substr(0, colon)), std::stod(part.substr(colon + 1)));
    }
    return box;
}

// relations that phi must kill: the declared relations plus the candidate
// factors (active factors vanish on the singular strata they cut out)
std::vector<os::Polynomial> relations_for_jobs(const os::ProblemSpec& problem) {
    std::vector<os::Polynomial> rels = problem.relations;
    rels.insert(rels.end(), problem.candidate_factors.begin(), problem.candidate_factors.end());
    return rels;
}

int run_pmatrix(const std::string& path, const std::string& out_path) {
    StageTimer timer;
    timer.start("load");
    const os::ProblemSpec problem = os::load_problem(path);
    timer.stop();

    timer.start("pmatrix");
    const os::PHatMatrix phat = os::pmatrix(*problem.mib);
    timer.stop();

    timer.start("euler_check");
    // applicable when the first basis element is the squared norm
    os::Polynomial norm2(problem.x_vars);
    for (std::size_t i = 0; i < problem.x_vars->size(); ++i) {
        os::Monomial m(problem.x_vars->size(), 0);
        m[i] = 2;
        norm2.add_term(m, os::Scalar(1));
    }
    const bool applicable = problem.mib->entry(0).poly == norm2;
    bool holds = true;
    if (applicable) {
        for (std::size_t a = 0; a < problem.mib->size(); ++a) {
            os::Polynomial expected =
                os::Polynomial::variable(problem.mib->name_context(), a)
                    .scaled(os::Scalar(2L * problem.mib->entry(a).degree));
            if (phat.mat.at(0, a) != expected) holds = false;
        }
    }
    timer.stop();

    timer.start("minor_sums");
    const auto sums = os::minor_sums(phat.mat);
    timer.stop();

    std::vector<std::string> diagnostics;
    if (applicable && !holds) diagnostics.push_back("Euler row check failed: P[1,a] != 2 d_a p_a");

    emit(os::make_report("pmatrix", path, os::file_digest(path),
                         os::pmatrix_results_json(phat, applicable, holds, sums), diagnostics,
                         timer.finish()),
         out_path);
    return applicable && !holds ? 1 : 0;
}

int run_relations(const std::string& path, long max_degree, const std::string& out_path) {
    StageTimer timer;
    timer.start("load");
    const os::ProblemSpec problem = os::load_problem(path);
    timer.stop();

    timer.start("find_relations");
    const auto relations = os::find_relations(*problem.mib, max_degree);
    timer.stop();

    emit(os::make_report("relations", path, os::file_digest(path),
                         os::relations_results_json(relations, max_degree), {}, timer.finish()),
         out_path);
    return 0;
}

int run_stratum(const std::string& path, std::size_t job, const std::string& out_path) {
    StageTimer timer;
    timer.start("load");
    const os::ProblemSpec problem = os::load_problem(path);
    timer.stop();
    if (job >= problem.strata_jobs.size())
        throw os::Error(os::Error::Kind::Validation,
                        "job index " + std::to_string(job) + " out of range (have " +
                            std::to_string(problem.strata_jobs.size()) + " jobs)");

    timer.start("pmatrix");
    const os::PHatMatrix phat = os::pmatrix(*problem.mib);
    timer.stop();

    timer.start("stratum");
    const os::Parametrization par =
        os::parametrize_stratum(*problem.mib, phat, relations_for_jobs(problem),
                                problem.strata_jobs[job].subspace,
                                problem.strata_jobs[job].lambda_mib, problem.field_d);
    timer.stop();

    emit(os::make_report("stratum", path, os::file_digest(path),
                         os::stratum_results_json(par, job), par.diagnostics, timer.finish()),
         out_path);
    if (!par.factorization.holds) {
        std::cerr << "verification failed: P(phi(lambda)) != J^T Lambda J\n";
        return 1;
    }
    if (!par.relation_check.all_vanish) {
        std::cerr << "verification failed: some relation does not vanish under phi\n";
        return 1;
    }
    return 0;
}

int run_verify(const std::string& path, const std::string& out_path) {
    StageTimer timer;
    timer.start("load");
    const os::ProblemSpec problem = os::load_problem(path);
    timer.stop();

    timer.start("pmatrix");
    const os::PHatMatrix phat = os::pmatrix(*problem.mib);
    timer.stop();

    timer.start("det");
    const os::Polynomial det = os::polymat_det(phat.mat);
    timer.stop();

    bool ok = true;
    timer.start("divisibility");
    std::vector<os::FactorCheck> factor_checks;
    for (const auto& factor : problem.candidate_factors) {
        os::FactorCheck check;
        check.factor = factor;
        auto quotient = os::divide_exact(det, factor);
        check.divides = quotient.has_value() && !quotient->is_zero();
        if (check.divides) check.quotient = std::move(*quotient);
        ok = ok && check.divides;
        factor_checks.push_back(std::move(check));
    }
    timer.stop();

    timer.start("jobs");
    std::vector<std::pair<std::size_t, bool>> job_checks;
    const auto rels = relations_for_jobs(problem);
    for (std::size_t k = 0; k < problem.strata_jobs.size(); ++k) {
        const auto& strata_job = problem.strata_jobs[k];
        const os::SubspaceBasis v =
            os::resolve_subspace(strata_job.subspace, problem.x_vars->size(),
                                 problem.x_vars->names(), problem.field_d);
        const auto restricted = os::restrict_mib(*problem.mib, v);
        const auto phi =
            os::compute_phi(restricted, strata_job.lambda_mib,
                            problem.mib->name_context()->names());
        const auto check = os::verify_relations_on_phi(rels, phi.phi);
        job_checks.emplace_back(k, check.all_vanish);
        ok = ok && check.all_vanish;
    }
    timer.stop();

    emit(os::make_report("verify", path, os::file_digest(path),
                         os::verify_results_json(det, factor_checks, job_checks), {},
                         timer.finish()),
         out_path);
    return ok ? 0 : 1;
}

int run_classify(const std::string& path, const std::string& point_text, double tol,
                 const std::string& out_path) {
    StageTimer timer;
    timer.start("load");
    const os::ProblemSpec problem = os::load_problem(path);
    timer.stop();

    timer.start("classify");
    const auto point = parse_point(point_text, problem.field_d);
    const auto cls = os::classify_point_x(point, *problem.mib, tol);
    timer.stop();

    emit(os::make_report("classify", path, os::file_digest(path),
                         os::classify_results_json(cls), {}, timer.finish()),
         out_path);
    return 0;
}

int run_probe(const std::string& path, std::size_t job, const std::string& box_text,
              long samples, std::uint64_t seed, double tol, const std::string& out_path) {
    StageTimer timer;
    timer.start("load");
    const os::ProblemSpec problem = os::load_problem(path);
    timer.stop();
    if (job >= problem.strata_jobs.size())
        throw os::Error(os::Error::Kind::Validation,
                        "job index " + std::to_string(job) + " out of range");

    timer.start("pmatrix");
    const os::PHatMatrix phat = os::pmatrix(*problem.mib);
    timer.stop();

    timer.start("stratum");
    const os::Parametrization par =
        os::parametrize_stratum(*problem.mib, phat, relations_for_jobs(problem),
                                problem.strata_jobs[job].subspace,
                                problem.strata_jobs[job].lambda_mib, problem.field_d);
    timer.stop();

    timer.start("probe");
    const auto box = parse_box(box_text);
    const auto probe =
        os::connectivity_probe(par.delta, par.jac, box, samples, seed, tol, tol, 0);
    timer.stop();

    emit(os::make_report("probe", path, os::file_digest(path),
                         os::probe_results_json(probe, job, box, samples, seed), {},
                         timer.finish()),
         out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbitstrata: exact stratification and rational parametrization of "
                 "orbit spaces of compact linear groups"};
    app.require_subcommand(1);

    std::string path, out_path, point_text, box_text;
    long max_degree = 8, samples = 10000;
    std::size_t job = 0;
    double tol = 1e-9;
    std::uint64_t seed = 42;

    auto* cmd_pmatrix = app.add_subcommand("pmatrix", "compute and render the P-hat matrix");
    cmd_pmatrix->add_option("problem", path)->required();
    cmd_pmatrix->add_option("--out", out_path);

    auto* cmd_relations = app.add_subcommand("relations", "degree-bounded relation search");
    cmd_relations->add_option("problem", path)->required();
    cmd_relations->add_option("--max-degree", max_degree)->required();
    cmd_relations->add_option("--out", out_path);

    auto* cmd_stratum =
        app.add_subcommand("stratum", "full parametrization pipeline for one strata job");
    cmd_stratum->add_option("problem", path)->required();
    cmd_stratum->add_option("--job", job)->required();
    cmd_stratum->add_option("--out", out_path);

    auto* cmd_verify =
        app.add_subcommand("verify", "det P-hat divisibility and relation vanishing checks");
    cmd_verify->add_option("problem", path)->required();
    cmd_verify->add_option("--out", out_path);

    auto* cmd_classify = app.add_subcommand("classify", "stratum signature at a point");
    cmd_classify->add_option("problem", path)->required();
    cmd_classify->add_option("--point", point_text)->required();
    cmd_classify->add_option("--tol", tol);
    cmd_classify->add_option("--out", out_path);

    auto* cmd_probe =
        app.add_subcommand("probe", "Delta sampling plus rank-of-J connectivity probe");
    cmd_probe->add_option("problem", path)->required();
    cmd_probe->add_option("--job", job)->required();
    cmd_probe->add_option("--box", box_text)->required();
    cmd_probe->add_option("--samples", samples)->required();
    cmd_probe->add_option("--seed", seed)->required();
    cmd_probe->add_option("--tol", tol);
    cmd_probe->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_pmatrix->parsed()) return run_pmatrix(path, out_path);
        if (cmd_relations->parsed()) return run_relations(path, max_degree, out_path);
        if (cmd_stratum->parsed()) return run_stratum(path, job, out_path);
        if (cmd_verify->parsed()) return run_verify(path, out_path);
        if (cmd_classify->parsed()) return run_classify(path, point_text, tol, out_path);
        if (cmd_probe->parsed())
            return run_probe(path, job, box_text, samples, seed, tol, out_path);
    } catch (const os::Error& e) {
        std::cerr << "error [" << os::to_string(e.kind()) << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
