// Micro/meso benchmarks for the hot paths: exact scalar arithmetic, operator
// composition, R-matrix construction and its identity checks, graded
// dimension counting, and a small Jacobi sweep.

#include <benchmark/benchmark.h>

#include "qiso/braided.hpp"
#include "qiso/frt.hpp"
#include "qiso/nc.hpp"
#include "qiso/poisson.hpp"

using namespace qiso;

namespace {

RatMat antidiag_ones(int n) {
  RatMat g(static_cast<std::size_t>(n),
           std::vector<GaussRational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1 - i)] = GaussRational(1);
  }
  return g;
}

void BM_ScalarMulDiv(benchmark::State& state) {
  QScalar a = QScalar::q_pow(3) + QScalar(2) * QScalar::v_pow(1) - QScalar(1);
  QScalar b = QScalar::q_pow(-2) + QScalar::v_pow(3);
  for (auto _ : state) {
    QScalar c = (a * b) / (a + b + QScalar(1));
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ScalarMulDiv);

void BM_FrtBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SoQData d = frt_build(n);
    benchmark::DoNotOptimize(d.w.nnz());
  }
}
BENCHMARK(BM_FrtBuild)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_YbeDefect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SoQData d = frt_build(n);
  for (auto _ : state) {
    TensorOp defect = ybe_defect(d.w);
    benchmark::DoNotOptimize(defect.is_zero());
  }
}
BENCHMARK(BM_YbeDefect)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OperatorCompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SoQData d = frt_build(n);
  for (auto _ : state) {
    TensorOp p = d.w * d.r_hat;
    benchmark::DoNotOptimize(p.nnz());
  }
}
BENCHMARK(BM_OperatorCompose)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ProjectorRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SoQData d = frt_build(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank(d.p_plus));
  }
}
BENCHMARK(BM_ProjectorRank)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GradedDimension(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SoQData d = frt_build(n);
  NCAlphabet a(n);
  for (auto _ : state) {
    NCReducer red(RelationSet{n, vector_vector_relations(a, d.p_minus)});
    benchmark::DoNotOptimize(red.graded_dimension({0, 0, 3, 0}));
  }
}
BENCHMARK(BM_GradedDimension)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DeltaPreserves(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BraidedAlgebra alg = assemble(n);
  for (auto _ : state) {
    DeltaReport rep = check_delta_preserves(alg);
    benchmark::DoNotOptimize(rep.all_passed());
  }
}
BENCHMARK(BM_DeltaPreserves)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_JacobiSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SoQData d = frt_build(n);
  ClassicalLimit cl = classical_limit(d);
  PoissonSpec sp;
  sp.n = n;
  sp.c = eval_at_one(cl.r);
  sp.w = eval_at_one(cl.w);
  sp.s_sym = eval_at_one(cl.s);
  sp.nu = GaussRational(-1);
  sp.eta = antidiag_ones(n);
  PoissonAlgebra alg{sp};
  for (auto _ : state) {
    JacobiReport rep = check_jacobi_all_generators(alg);
    benchmark::DoNotOptimize(rep.passed());
  }
}
BENCHMARK(BM_JacobiSweep)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
