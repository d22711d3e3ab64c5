#include <benchmark/benchmark.h>

#include "resym/generators.hpp"
#include "resym/graph.hpp"
#include "resym/kron.hpp"
#include "resym/linalg.hpp"
#include "resym/partition.hpp"
#include "resym/symmetrize.hpp"

namespace {

using namespace resym;

void BM_SylvesterSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LaplacianMatrix l = laplacian(random_connected_digraph(n, 1));
  const Eigen::MatrixXd lbar = reduced_laplacian(l, complement_basis(n));
  const Eigen::MatrixXd c = Eigen::MatrixXd::Identity(n - 1, n - 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(sylvester_solve(lbar, lbar.transpose(), c));
}
BENCHMARK(BM_SylvesterSolve)->Arg(10)->Arg(40)->Arg(80)->Arg(160);

void BM_Symmetrize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LaplacianMatrix l = laplacian(random_connected_digraph(n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize(l).sym_laplacian);
}
BENCHMARK(BM_Symmetrize)->Arg(10)->Arg(40)->Arg(80)->Arg(160);

void BM_ResistanceMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LaplacianMatrix l = laplacian(random_connected_digraph(n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(resistance_matrix(l).entries);
}
BENCHMARK(BM_ResistanceMatrix)->Arg(10)->Arg(40)->Arg(80)->Arg(160);

void BM_Decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LaplacianMatrix l = laplacian(random_connected_digraph(n, 4));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(l).h_matrix);
}
BENCHMARK(BM_Decompose)->Arg(10)->Arg(40)->Arg(80);

void BM_Bisect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LaplacianMatrix l = laplacian(random_connected_digraph(n, 5));
  for (auto _ : state) benchmark::DoNotOptimize(bisect(l).urc_value);
}
BENCHMARK(BM_Bisect)->Arg(10)->Arg(40)->Arg(80);

void BM_DirectedKron(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LaplacianMatrix l = laplacian(random_connected_digraph(n, 6));
  std::vector<int> kept;
  for (int i = 0; i < n; i += 2) kept.push_back(i);
  for (auto _ : state)
    benchmark::DoNotOptimize(directed_kron(l, kept).reduced_directed);
}
BENCHMARK(BM_DirectedKron)->Arg(10)->Arg(40)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
