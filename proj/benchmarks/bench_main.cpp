#include <benchmark/benchmark.h>

#include "mobius/curves.hpp"
#include "mobius/euler.hpp"
#include "mobius/nodal.hpp"
#include "mobius/spectrum.hpp"

using namespace mobius;

namespace {

const EigenfunctionSpec& sample_spec() {
    static const EigenfunctionSpec s = family_to_spec(FamilyParams::two_three(0.4, 0.3));
    return s;
}

void BM_SampleGrid(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(sample_grid(sample_spec(), n, n));
    st.SetItemsProcessed(st.iterations() * n * n);
}
BENCHMARK(BM_SampleGrid)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_CountNodalDomains(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const SignGrid g = sample_grid(sample_spec(), n, n);
    for (auto _ : st) benchmark::DoNotOptimize(count_nodal_domains(g));
    st.SetItemsProcessed(st.iterations() * n * n);
}
BENCHMARK(BM_CountNodalDomains)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_ExtractCurves(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const SignGrid g = sample_grid(sample_spec(), n, n);
    for (auto _ : st) benchmark::DoNotOptimize(extract_curves(sample_spec(), g));
}
BENCHMARK(BM_ExtractCurves)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_EnumerateSpectrum(benchmark::State& st) {
    const double lambda_max = static_cast<double>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_spectrum(1.0, lambda_max));
}
BENCHMARK(BM_EnumerateSpectrum)->Arg(65)->Arg(1000)->Arg(10000);

void BM_EulerCheck(benchmark::State& st) {
    const FamilyParams p = FamilyParams::two_three(0.4, 0.3);
    EulerOptions o;
    o.nodal.resolution = 400;
    for (auto _ : st) benchmark::DoNotOptimize(euler_check(family_to_spec(p), p, o));
}
BENCHMARK(BM_EulerCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
