#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitstrata/errors.hpp"
#include "orbitstrata/expr.hpp"
#include "orbitstrata/parametrize.hpp"
#include "orbitstrata/problem.hpp"
#include "orbitstrata/strata.hpp"
#include "testutil.hpp"

using namespace orbitstrata;
using testutil::problem_path;

namespace {

const ProblemSpec& o3() {
    static const ProblemSpec problem = load_problem(problem_path("o3_r8.json"));
    return problem;
}

Parametrization run_o3_job0() {
    const auto& problem = o3();
    const PHatMatrix phat = pmatrix(*problem.mib);
    return parametrize_stratum(*problem.mib, phat, problem.candidate_factors,
                               problem.strata_jobs[0].subspace, problem.strata_jobs[0].lambda_mib,
                               problem.field_d);
}

} // namespace

TEST_CASE("resolve_subspace") {
    SUBCASE("zero-coordinate form keeps ambient names") {
        SubspaceSpec spec;
        spec.form = SubspaceSpec::Form::ZeroCoords;
        spec.zero_coords = {3, 4, 6};
        const auto v = resolve_subspace(spec, 8, o3().x_vars->names(), 3);
        CHECK(v.dim() == 5);
        CHECK(v.labels == std::vector<std::string>{"x1", "x2", "x5", "x7", "x8"});
    }
    SUBCASE("generator form matches the zero-coordinate form for the O(3) job") {
        const auto v = resolve_subspace(o3().strata_jobs[0].subspace, 8, o3().x_vars->names(), 3);
        CHECK(v.dim() == 5);
        CHECK(v.labels == std::vector<std::string>{"x1", "x2", "x5", "x7", "x8"});
    }
    SUBCASE("out-of-range zero coordinate") {
        SubspaceSpec spec;
        spec.form = SubspaceSpec::Form::ZeroCoords;
        spec.zero_coords = {9};
        CHECK_THROWS_AS(resolve_subspace(spec, 8, o3().x_vars->names(), 3), Error);
    }
}

TEST_CASE("restrict_mib") {
    const auto& problem = o3();
    SubspaceSpec spec;
    spec.form = SubspaceSpec::Form::ZeroCoords;
    spec.zero_coords = {3, 4, 6};
    const auto v = resolve_subspace(spec, 8, problem.x_vars->names(), 3);
    const auto restricted = restrict_mib(*problem.mib, v);
    REQUIRE(restricted.size() == 5);
    const auto vctx = restricted[0].context();
    CHECK(restricted[1] == parse_poly("x7^2 + x8^2", vctx, 3));
    CHECK(restricted[0] == parse_poly("x1^2 + x2^2 + x5^2 + x7^2 + x8^2", vctx, 3));
    // evaluation agreement at random points of V
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto vpt = testutil::random_point(rng, 5);
        const std::vector<Scalar> xpt{vpt[0], vpt[1], Scalar(0), Scalar(0),
                                      vpt[2], Scalar(0), vpt[3], vpt[4]};
        for (std::size_t a = 0; a < 5; ++a)
            CHECK(restricted[a].evaluate(vpt) == problem.mib->entry(a).poly.evaluate(xpt));
    }

    SUBCASE("V = R^n leaves the basis unchanged") {
        SubspaceSpec whole;
        whole.form = SubspaceSpec::Form::ZeroCoords;
        whole.zero_coords = {};
        const auto vfull = resolve_subspace(whole, 8, problem.x_vars->names(), 3);
        const auto same = restrict_mib(*problem.mib, vfull);
        for (std::size_t a = 0; a < 5; ++a) CHECK(same[a] == problem.mib->entry(a).poly);
    }
}

TEST_CASE("compute_phi") {
    SUBCASE("O(3) job reproduces the computed convention") {
        const auto par = run_o3_job0();
        const auto lctx = o3().strata_jobs[0].lambda_mib.name_context();
        REQUIRE(par.phi.size() == 5);
        CHECK(par.phi[0] == parse_poly("l1^2 + l2 + l3", lctx, 3));
        CHECK(par.phi[1] == parse_poly("l3", lctx, 3));
        CHECK(par.phi[2] == parse_poly("-2*rt*(l1^3 - 3*l1*l2)", lctx, 3));
        CHECK(par.phi[3] == parse_poly("rt*l1*l3 - 3/2*l4", lctx, 3));
        CHECK(par.phi[4] == parse_poly("l1^2*l3 + 3*l2*l3 - rt*l1*l4", lctx, 3));

        // numeric agreement p(v) = phi(lambda(v)) at random points of V
        const auto& lambda = o3().strata_jobs[0].lambda_mib;
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 100; ++trial) {
            const auto vpt = testutil::random_point(rng, 5);
            std::vector<Scalar> lam;
            for (const auto& e : lambda.entries()) lam.push_back(e.poly.evaluate(vpt));
            for (std::size_t a = 0; a < 5; ++a)
                CHECK(par.phi[a].evaluate(lam) == par.p_restricted[a].evaluate(vpt));
        }
    }
    SUBCASE("the paper's convention differs by lambda_1 -> -lambda_1") {
        const auto par = run_o3_job0();
        const auto lctx = o3().strata_jobs[0].lambda_mib.name_context();
        const char* paper_phi[5] = {
            "l1^2 + l2 + l3",
            "l3",
            "2*rt*(l1^3 - 3*l1*l2)",
            "-1/2*rt*(2*l1*l3 + rt*l4)",
            "l1^2*l3 + 3*l2*l3 + rt*l1*l4",
        };
        std::vector<Polynomial> flip{-Polynomial::variable(lctx, 0),
                                     Polynomial::variable(lctx, 1),
                                     Polynomial::variable(lctx, 2),
                                     Polynomial::variable(lctx, 3)};
        for (std::size_t a = 0; a < 5; ++a)
            CHECK(parse_poly(paper_phi[a], lctx, 3).substitute(flip) == par.phi[a]);
    }
    SUBCASE("lambda basis equal to the restricted invariants gives the identity") {
        const auto& problem = o3();
        SubspaceSpec spec;
        spec.form = SubspaceSpec::Form::ZeroCoords;
        spec.zero_coords = {3, 4, 6};
        const auto v = resolve_subspace(spec, 8, problem.x_vars->names(), 3);
        const auto restricted = restrict_mib(*problem.mib, v);
        std::vector<MibEntry> entries;
        const std::vector<int> degs = problem.mib->degrees();
        for (std::size_t a = 0; a < restricted.size(); ++a)
            entries.push_back({"q" + std::to_string(a + 1), degs[a], restricted[a]});
        const MIB self(restricted[0].context(), std::move(entries));
        const auto phi = compute_phi(restricted, self, problem.mib->name_context()->names());
        for (std::size_t a = 0; a < restricted.size(); ++a)
            CHECK(phi.phi[a] == Polynomial::variable(self.name_context(), a));
    }
    SUBCASE("a lambda basis that cannot generate reports the offending invariant") {
        const auto& problem = o3();
        SubspaceSpec spec;
        spec.form = SubspaceSpec::Form::ZeroCoords;
        spec.zero_coords = {3, 4, 6};
        const auto v = resolve_subspace(spec, 8, problem.x_vars->names(), 3);
        const auto restricted = restrict_mib(*problem.mib, v);
        const auto vctx = restricted[0].context();
        std::vector<MibEntry> entries{{"l1", 1, parse_poly("x1", vctx, 3)},
                                      {"l2", 2, parse_poly("x2^2 + x5^2", vctx, 3)},
                                      {"l3", 2, parse_poly("x7^2 + x8^2", vctx, 3)}};
        const MIB missing(vctx, std::move(entries));
        try {
            compute_phi(restricted, missing, problem.mib->name_context()->names());
            FAIL("expected LambdaNotGenerating");
        } catch (const Error& e) {
            CHECK(e.kind() == Error::Kind::LambdaNotGenerating);
            CHECK(std::string(e.what()).find("p4") != std::string::npos);
        }
    }
}

TEST_CASE("lambda_pmatrix examples") {
    SUBCASE("O(3) lambda basis gives the published Lambda-hat") {
        const auto par = run_o3_job0();
        const auto lctx = o3().strata_jobs[0].lambda_mib.name_context();
        const char* expected[4][4] = {
            {"1", "0", "0", "0"},
            {"0", "4*l2", "0", "2*l4"},
            {"0", "0", "4*l3", "4*l4"},
            {"0", "2*l4", "4*l4", "4*(l3^2 + 4*l2*l3)"},
        };
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(par.lambda_hat.at(i, j) == parse_poly(expected[i][j], lctx, 3));
    }
    SUBCASE("one-variable bases") {
        const auto vctx = make_context({"x"});
        const MIB coord(vctx, {{"l1", 1, parse_poly("x", vctx, 0)}});
        CHECK(pmatrix(coord).mat.at(0, 0) ==
              Polynomial::constant(coord.name_context(), Scalar(1)));
        const MIB square(vctx, {{"l1", 2, parse_poly("x^2", vctx, 0)}});
        CHECK(pmatrix(square).mat.at(0, 0) ==
              parse_poly("4*l1", square.name_context(), 0));
    }
}

TEST_CASE("jacobian") {
    const auto lctx = make_context({"l1", "l2"});
    SUBCASE("linear map gives the constant coefficient matrix") {
        const std::vector<Polynomial> phi{parse_poly("2*l1 + 3*l2", lctx, 0),
                                          parse_poly("l1 - l2", lctx, 0)};
        const PolyMatrix j = jacobian(phi);
        CHECK(j.at(0, 0) == parse_poly("2", lctx, 0));
        CHECK(j.at(0, 1) == parse_poly("1", lctx, 0));
        CHECK(j.at(1, 0) == parse_poly("3", lctx, 0));
        CHECK(j.at(1, 1) == parse_poly("-1", lctx, 0));
    }
    SUBCASE("identity map gives the identity matrix") {
        const std::vector<Polynomial> phi{Polynomial::variable(lctx, 0),
                                          Polynomial::variable(lctx, 1)};
        const PolyMatrix j = jacobian(phi);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                CHECK(j.at(a, b) ==
                      Polynomial::constant(lctx, Scalar(a == b ? 1 : 0)));
    }
    SUBCASE("O(3) Jacobian columns are the phi gradients") {
        const auto par = run_o3_job0();
        for (std::size_t alpha = 0; alpha < 4; ++alpha)
            for (std::size_t a = 0; a < 5; ++a)
                CHECK(par.jac.at(alpha, a) == par.phi[a].derivative(alpha));
    }
}

TEST_CASE("verify_factorization") {
    SUBCASE("the Z2 reflection fixture") {
        const ProblemSpec problem = load_problem(problem_path("z2_reflection.json"));
        const PHatMatrix phat = pmatrix(*problem.mib);
        const auto par =
            parametrize_stratum(*problem.mib, phat, problem.relations,
                                problem.strata_jobs[0].subspace,
                                problem.strata_jobs[0].lambda_mib, problem.field_d);
        CHECK(par.factorization.holds);
        CHECK(par.factorization.mismatches.empty());
        const auto lctx = problem.strata_jobs[0].lambda_mib.name_context();
        CHECK(par.phi[0] == Polynomial::variable(lctx, 0));
        CHECK(par.phi[1].is_zero());
        CHECK(par.lambda_hat.at(0, 0) == Polynomial::constant(lctx, Scalar(1)));
        CHECK(par.jac.at(0, 0) == Polynomial::constant(lctx, Scalar(1)));
        CHECK(par.jac.at(0, 1).is_zero());
        REQUIRE(par.delta.leading_minors.size() == 1);
        CHECK(par.delta.leading_minors[0] == Polynomial::constant(lctx, Scalar(1)));
        CHECK(par.coregular_k);
    }
    SUBCASE("a perturbed phi fails with the offending entry listed") {
        const auto par = run_o3_job0();
        const PHatMatrix phat = pmatrix(*o3().mib);
        auto phi = par.phi;
        const auto lctx = phi[0].context();
        phi[3] = phi[3] + parse_poly("3*l4", lctx, 3); // flip the sign of the l4 term
        const auto report = verify_factorization(phat, phi, par.lambda_hat, jacobian(phi));
        CHECK(!report.holds);
        CHECK(!report.mismatches.empty());
        bool involves_p4 = false;
        for (auto [a, b] : report.mismatches)
            if (a == 3 || b == 3) involves_p4 = true;
        CHECK(involves_p4);
    }
}

TEST_CASE("verify_relations_on_phi") {
    const auto lctx = make_context({"l1"});
    const auto pctx = make_context({"p1", "p2"});
    const std::vector<Polynomial> phi{Polynomial::variable(lctx, 0),
                                      Polynomial::zero(lctx)};
    SUBCASE("empty relation list is vacuously true") {
        CHECK(verify_relations_on_phi({}, phi).all_vanish);
    }
    SUBCASE("non-vanishing residual is returned") {
        const std::vector<Polynomial> rels{Polynomial::variable(pctx, 0)};
        const auto check = verify_relations_on_phi(rels, phi);
        CHECK(!check.all_vanish);
        REQUIRE(check.residuals.size() == 1);
        CHECK(check.residuals[0].first == 0);
        CHECK(check.residuals[0].second == Polynomial::variable(lctx, 0));
    }
    SUBCASE("the active factor vanishes under the O(3) phi") {
        const auto par = run_o3_job0();
        const auto check = verify_relations_on_phi(o3().candidate_factors, par.phi);
        CHECK(check.all_vanish);
    }
}

TEST_CASE("delta_region") {
    SUBCASE("O(3) leading minors") {
        const auto par = run_o3_job0();
        const auto lctx = o3().strata_jobs[0].lambda_mib.name_context();
        REQUIRE(par.delta.leading_minors.size() == 4);
        CHECK(par.delta.leading_minors[0] == parse_poly("1", lctx, 3));
        CHECK(par.delta.leading_minors[1] == parse_poly("4*l2", lctx, 3));
        CHECK(par.delta.leading_minors[2] == parse_poly("16*l2*l3", lctx, 3));
        CHECK(par.delta.leading_minors[3] ==
              parse_poly("16*(4*l2 + l3)*(4*l2*l3^2 - l4^2)", lctx, 3));
        CHECK(par.delta.jacobian_minors.size() == 5); // C(5, 4)
        CHECK(par.delta.dimension == 4);
    }
    SUBCASE("Delta soundness: minors positive iff Lambda-hat positive definite") {
        const auto par = run_o3_job0();
        const std::vector<std::pair<double, double>> box(4, {-2.0, 2.0});
        int checked = 0;
        for (long i = 0; checked < 200 && i < 20000; ++i) {
            const auto lam = sample_point(box, i, 999);
            double margin = 1e300;
            bool all_pos = true;
            for (const auto& m : par.delta.leading_minors) {
                const double v = m.evaluate_double(lam);
                margin = std::min(margin, std::abs(v));
                all_pos = all_pos && v > 0;
            }
            if (margin <= 1e-9) continue;
            ++checked;
            FloatMatrix num(4, 4, true);
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    num.at(r, c) = par.lambda_hat.at(r, c).evaluate_double(lam);
            const auto eig = sym_eigen(num, 1e-13);
            if (all_pos)
                CHECK(eig.front() > 1e-12);
            else
                CHECK(eig.front() <= 1e-12);
        }
        CHECK(checked == 200);
    }
}

TEST_CASE("connectivity_probe") {
    const std::vector<std::pair<double, double>> box4(4, {-2.0, 2.0});
    SUBCASE("O(3) job: rank 4 on every in-region sample") {
        const auto par = run_o3_job0();
        const auto report = connectivity_probe(par.delta, par.jac, box4, 2000, 42);
        CHECK(report.tested == 2000);
        CHECK(report.in_region > 0);
        CHECK(report.min_rank == 4);
        CHECK(report.required_rank == 4);
        CHECK(report.rank_deficient_points.empty());
    }
    SUBCASE("an identically deficient Jacobian is flagged everywhere") {
        const auto lctx = make_context({"l1"});
        PolyMatrix jac(2, 2, lctx, false);
        jac.set(0, 0, Polynomial::constant(lctx, Scalar(1)));
        // second row identically zero: rank 1 < l = 2
        RegionDescription region;
        region.dimension = 1;
        region.leading_minors = {Polynomial::constant(lctx, Scalar(1))};
        region.jacobian_minors = maximal_minors(jac);
        const std::vector<std::pair<double, double>> box1(1, {-1.0, 1.0});
        const auto report = connectivity_probe(region, jac, box1, 100, 7);
        CHECK(report.min_rank == 1);
        CHECK(static_cast<long>(report.rank_deficient_points.size()) == report.in_region);
    }
    SUBCASE("constant full-rank Jacobian triggers the exact shortcut") {
        const auto lctx = make_context({"l1"});
        PolyMatrix jac(1, 2, lctx, false);
        jac.set(0, 0, Polynomial::constant(lctx, Scalar(1)));
        RegionDescription region;
        region.dimension = 1;
        region.leading_minors = {Polynomial::constant(lctx, Scalar(1))};
        region.jacobian_minors = maximal_minors(jac);
        const std::vector<std::pair<double, double>> box1(1, {-1.0, 1.0});
        const auto report = connectivity_probe(region, jac, box1, 100, 7);
        CHECK(report.min_rank == 1);
        CHECK(report.exact_shortcut);
        CHECK(report.rank_deficient_points.empty());
    }
    SUBCASE("empty region raises EmptySample") {
        const auto lctx = make_context({"l1"});
        PolyMatrix jac(1, 1, lctx, false);
        jac.set(0, 0, Polynomial::constant(lctx, Scalar(1)));
        RegionDescription region;
        region.dimension = 1;
        region.leading_minors = {Polynomial::constant(lctx, Scalar(-1))};
        region.jacobian_minors = maximal_minors(jac);
        const std::vector<std::pair<double, double>> box1(1, {-1.0, 1.0});
        CHECK_THROWS_AS(connectivity_probe(region, jac, box1, 50, 7), Error);
    }
    SUBCASE("results do not depend on the thread count") {
        const auto par = run_o3_job0();
        const auto one = connectivity_probe(par.delta, par.jac, box4, 3000, 5, 1e-9, 1e-9, 1);
        const auto four = connectivity_probe(par.delta, par.jac, box4, 3000, 5, 1e-9, 1e-9, 4);
        CHECK(one.in_region == four.in_region);
        CHECK(one.min_rank == four.min_rank);
        CHECK(one.rank_deficient_points == four.rank_deficient_points);
    }
}

TEST_CASE("Lambda-hat does not depend on the sign convention of lambda_1") {
    const auto& lambda = o3().strata_jobs[0].lambda_mib;
    std::vector<MibEntry> flipped = lambda.entries();
    flipped[0].poly = -flipped[0].poly;
    const MIB lambda_neg(lambda.var_context(), std::move(flipped));
    CHECK(pmatrix(lambda_neg).mat == pmatrix(lambda).mat);
}

TEST_CASE("rank coherence: gradient Gram rank at v equals l inside Delta") {
    const auto& problem = o3();
    const auto par = run_o3_job0();
    const auto& lambda = problem.strata_jobs[0].lambda_mib;
    std::mt19937_64 rng(2718);
    int inside = 0;
    for (int trial = 0; trial < 400 && inside < 25; ++trial) {
        const auto vpt = testutil::random_point(rng, 5);
        std::vector<Scalar> lam_exact;
        for (const auto& e : lambda.entries()) lam_exact.push_back(e.poly.evaluate(vpt));
        bool in_delta = true;
        double margin = 1e300;
        for (const auto& m : par.delta.leading_minors) {
            const double v = m.evaluate(lam_exact).to_double();
            margin = std::min(margin, std::abs(v));
            in_delta = in_delta && v > 0;
        }
        if (!in_delta || margin < 1e-6) continue;
        ++inside;
        const std::vector<Scalar> xpt{vpt[0], vpt[1], Scalar(0), Scalar(0),
                                      vpt[2], Scalar(0), vpt[3], vpt[4]};
        CHECK(classify_point_x(xpt, *problem.mib, 1e-9).signature.rank == 4);
    }
    CHECK(inside >= 25);
}

TEST_CASE("parametrize_stratum end-to-end on the mini fixtures") {
    SUBCASE("dihedral6 mirror stratum") {
        const ProblemSpec problem = load_problem(problem_path("dihedral6.json"));
        const PHatMatrix phat = pmatrix(*problem.mib);
        const auto par = parametrize_stratum(*problem.mib, phat, problem.relations,
                                             problem.strata_jobs[0].subspace,
                                             problem.strata_jobs[0].lambda_mib, problem.field_d);
        const auto lctx = problem.strata_jobs[0].lambda_mib.name_context();
        CHECK(par.phi[0] == parse_poly("l1^2", lctx, 3));
        CHECK(par.phi[1] == parse_poly("l1^3", lctx, 3));
        CHECK(par.factorization.holds);
        CHECK(par.coregular_k);
        // rank drops exactly at l1 = 0: both maximal minors vanish there
        for (const auto& m : par.delta.jacobian_minors) {
            CHECK(m.evaluate({Scalar(0)}).is_zero());
            CHECK(!m.evaluate({Scalar(1)}).is_zero());
        }
    }
    SUBCASE("stage errors carry their stage tag") {
        const ProblemSpec problem = load_problem(problem_path("z2_reflection.json"));
        const PHatMatrix phat = pmatrix(*problem.mib);
        SubspaceSpec bad;
        bad.form = SubspaceSpec::Form::ZeroCoords;
        bad.zero_coords = {1}; // V = {x = 0}, but the lambda basis uses variable x
        try {
            parametrize_stratum(*problem.mib, phat, problem.relations, bad,
                                problem.strata_jobs[0].lambda_mib, problem.field_d);
            FAIL("expected a stage-tagged error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("[restrict_mib]") != std::string::npos);
        }
    }
}
