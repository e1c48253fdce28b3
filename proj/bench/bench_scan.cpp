// Serial reference kernels against their OpenMP variants on the corpus.

#include "siltlab/lemmas.hpp"
#include "siltlab/spec_file.hpp"

#include <benchmark/benchmark.h>

using namespace siltlab;

namespace {

const char* const kFiles[] = {"ka2.yaml", "ka3.yaml", "cyclic22.yaml"};

AlgebraSpec spec_of(int i) { return load_spec_file(std::string(SILTLAB_SPEC_DIR) + "/" + kFiles[i]); }

Exec exec_of(int e) { return e == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) {
    st.SetLabel(std::string(kFiles[st.range(0)]) + (st.range(1) == 0 ? " serial" : " parallel"));
}

void BM_Core(benchmark::State& st) {
    auto s = spec_of(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        auto core = make_core(s.algebra, s.declared, exec_of(static_cast<int>(st.range(1))));
        benchmark::DoNotOptimize(core->atlas(3).pieces.size());
    }
    label(st);
}

void BM_Cotorsion(benchmark::State& st) {
    auto s = spec_of(static_cast<int>(st.range(0)));
    Context ctx(make_core(s.algebra, s.declared, exec_of(static_cast<int>(st.range(1)))));
    ctx.atlas();
    for (auto _ : st) {
        benchmark::DoNotOptimize(enumerate_cotorsion_pairs(ctx).pairs.size());
    }
    label(st);
}

void BM_Silting(benchmark::State& st) {
    auto s = spec_of(static_cast<int>(st.range(0)));
    Context ctx(make_core(s.algebra, s.declared, exec_of(static_cast<int>(st.range(1)))));
    for (auto _ : st) {
        benchmark::DoNotOptimize(enumerate_silting(ctx).size());
    }
    label(st);
}

void BM_LemBasic(benchmark::State& st) {
    auto s = spec_of(static_cast<int>(st.range(0)));
    Context ctx(make_core(s.algebra, s.declared, exec_of(static_cast<int>(st.range(1)))));
    for (auto _ : st) {
        benchmark::DoNotOptimize(verify_lem_basic(ctx).checks);
    }
    label(st);
}

void args(benchmark::internal::Benchmark* b) {
    for (int f = 0; f < 3; ++f) {
        for (int e = 0; e < 2; ++e) {
            b->Args({f, e});
        }
    }
    b->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK(BM_Core)->Apply(args);
BENCHMARK(BM_Cotorsion)->Apply(args);
BENCHMARK(BM_Silting)->Apply(args);
BENCHMARK(BM_LemBasic)->Apply(args);

BENCHMARK_MAIN();
