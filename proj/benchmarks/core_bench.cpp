#include <benchmark/benchmark.h>

#include "renorm/birkhoff.hpp"
#include "renorm/matrix.hpp"

using namespace renorm;

namespace {

Config bench_config() {
    Config cfg;
    SymPoly::set_tau_cap(cfg.tau_cap);
    return cfg;
}

void BM_CoproductDegree6(benchmark::State& state) {
    Forest f = parse_forest("[[][[]]] [[]]");  // degree 6
    for (auto _ : state) {
        benchmark::DoNotOptimize(coproduct(HopfElement::from(f)));
    }
}
BENCHMARK(BM_CoproductDegree6);

void BM_AntipodeDegree5(benchmark::State& state) {
    Tree t = parse_tree("[[][][[]]]");
    for (auto _ : state) {
        benchmark::DoNotOptimize(antipode_right_recursion(Forest(t)));
    }
}
BENCHMARK(BM_AntipodeDegree5);

void BM_BnSeries(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(bn_series(3, 11));
    }
}
BENCHMARK(BM_BnSeries);

void BM_BirkhoffDegree4(benchmark::State& state) {
    Config cfg = bench_config();
    Tree t = parse_tree("[[][][]]");
    for (auto _ : state) {
        // Fresh character and decomposition each round; memo reuse would
        // otherwise make this a cache benchmark.
        BirkhoffPair pair = birkhoff_decompose(toy_character(cfg));
        benchmark::DoNotOptimize(pair.minus(t));
    }
}
BENCHMARK(BM_BirkhoffDegree4);

void BM_AtkinsonFactorize5x5(benchmark::State& state) {
    Config cfg = bench_config();
    CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
    TriMatrix phihat = psi(toy_character(cfg), coproduct_matrix(basis));
    for (auto _ : state) {
        benchmark::DoNotOptimize(atkinson_factorize(phihat));
    }
}
BENCHMARK(BM_AtkinsonFactorize5x5);

void BM_BetaTripleAgreement(benchmark::State& state) {
    Config cfg = bench_config();
    CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
    TriMatrix minus = atkinson_factorize(psi(toy_character(cfg), coproduct_matrix(basis))).minus;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beta_matrix(minus, basis));
        benchmark::DoNotOptimize(beta_matrix_commutator(minus, basis));
        benchmark::DoNotOptimize(beta_matrix_bch(minus, basis));
    }
}
BENCHMARK(BM_BetaTripleAgreement);

}  // namespace

BENCHMARK_MAIN();
