#include <benchmark/benchmark.h>

#include "jacobi/roots.hpp"

namespace {

using namespace jacobi;

void BM_isolate_real_roots(benchmark::State& state) {
    RatPoly p = RatPoly::linear_minus_x(Rat(1)) * RatPoly::linear_minus_x(Rat(10000)) *
                RatPoly::linear_minus_x(rat_from_string("1e8")) *
                RatPoly::linear_minus_x(rat_from_string("1e12"));
    for (auto _ : state) {
        auto roots = isolate_real_roots(p);
        benchmark::DoNotOptimize(roots);
    }
}
BENCHMARK(BM_isolate_real_roots);

void BM_pole_refine(benchmark::State& state) {
    RatPoly p(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)});
    DyadicInterval enc = DyadicInterval::exact(Rat(1), Rat(2));
    for (auto _ : state) {
        DyadicInterval r = refine_root(p, enc, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_pole_refine)->Arg(64)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
