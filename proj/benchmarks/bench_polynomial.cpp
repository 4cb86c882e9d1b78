#include <benchmark/benchmark.h>

#include <random>

#include "orbitstrata/expr.hpp"
#include "orbitstrata/poly_matrix.hpp"
#include "orbitstrata/polynomial.hpp"

using namespace orbitstrata;

namespace {

Polynomial dense_poly(const ContextPtr& ctx, int degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coeff(-9, 9);
    Polynomial p(ctx);
    std::vector<std::uint32_t> m(ctx->size(), 0);
    // all monomials of total degree <= degree over the first three variables
    for (std::uint32_t a = 0; a <= static_cast<std::uint32_t>(degree); ++a)
        for (std::uint32_t b = 0; a + b <= static_cast<std::uint32_t>(degree); ++b)
            for (std::uint32_t c = 0; a + b + c <= static_cast<std::uint32_t>(degree); ++c) {
                m[0] = a;
                m[1] = b;
                m[2] = c;
                const long v = coeff(rng);
                if (v != 0) p.add_term(m, Scalar(v));
            }
    return p;
}

void BM_PolyMultiply(benchmark::State& state) {
    const auto ctx = make_context({"x", "y", "z"});
    const Polynomial f = dense_poly(ctx, static_cast<int>(state.range(0)), 1);
    const Polynomial g = dense_poly(ctx, static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        Polynomial h = f * g;
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(6)->Arg(8);

void BM_DivideExact(benchmark::State& state) {
    const auto ctx = make_context({"x", "y", "z"});
    const Polynomial g = dense_poly(ctx, 4, 3);
    const Polynomial f = g * dense_poly(ctx, 4, 4);
    for (auto _ : state) {
        auto q = divide_exact(f, g);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_DivideExact);

void BM_Bareiss5x5(benchmark::State& state) {
    const auto ctx = make_context({"x", "y", "z"});
    PolyMatrix m(5, 5, ctx, false);
    std::uint64_t seed = 10;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) m.set(i, j, dense_poly(ctx, 2, seed++));
    for (auto _ : state) {
        Polynomial det = polymat_det(m);
        benchmark::DoNotOptimize(det);
    }
}
BENCHMARK(BM_Bareiss5x5);

} // namespace

BENCHMARK_MAIN();
