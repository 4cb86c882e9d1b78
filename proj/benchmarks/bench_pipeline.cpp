#include <benchmark/benchmark.h>

#include "orbitstrata/problem.hpp"
#include "orbitstrata/strata.hpp"

using namespace orbitstrata;

namespace {

const ProblemSpec& o3_problem() {
    static const ProblemSpec problem =
        load_problem(std::string(ORBITSTRATA_PROBLEM_DIR) + "/o3_r8.json");
    return problem;
}

void BM_PMatrixO3(benchmark::State& state) {
    const auto& problem = o3_problem();
    for (auto _ : state) {
        PHatMatrix phat = pmatrix(*problem.mib);
        benchmark::DoNotOptimize(phat);
    }
}
BENCHMARK(BM_PMatrixO3);

void BM_DetPHatO3(benchmark::State& state) {
    const PHatMatrix phat = pmatrix(*o3_problem().mib);
    for (auto _ : state) {
        Polynomial det = polymat_det(phat.mat);
        benchmark::DoNotOptimize(det);
    }
}
BENCHMARK(BM_DetPHatO3);

void BM_StratumO3(benchmark::State& state) {
    const auto& problem = o3_problem();
    const PHatMatrix phat = pmatrix(*problem.mib);
    for (auto _ : state) {
        Parametrization par =
            parametrize_stratum(*problem.mib, phat, problem.candidate_factors,
                                problem.strata_jobs[0].subspace,
                                problem.strata_jobs[0].lambda_mib, problem.field_d);
        benchmark::DoNotOptimize(par);
    }
}
BENCHMARK(BM_StratumO3);

void BM_RelationSearchO3(benchmark::State& state) {
    const auto& problem = o3_problem();
    for (auto _ : state) {
        auto relations = find_relations(*problem.mib, state.range(0));
        benchmark::DoNotOptimize(relations);
    }
}
BENCHMARK(BM_RelationSearchO3)->Arg(6)->Arg(8);

void BM_JacobiEigen(benchmark::State& state) {
    const std::size_t n = state.range(0);
    FloatMatrix m(n, n, true);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = 1.0 / static_cast<double>(i + j + 1); // Hilbert-like
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    for (auto _ : state) {
        auto eig = sym_eigen(m, 1e-13);
        benchmark::DoNotOptimize(eig);
    }
}
BENCHMARK(BM_JacobiEigen)->Arg(4)->Arg(8);

} // namespace
