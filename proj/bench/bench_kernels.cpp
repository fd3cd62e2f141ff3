// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// core count; on one core the two should be within noise of each other.
#include <benchmark/benchmark.h>

#include <vector>

#include "wflo/kernels.hpp"
#include "wflo/optim/exhaustive.hpp"
#include "wflo/pauli.hpp"
#include "wflo/qubo.hpp"
#include "wflo/rng.hpp"
#include "wflo/vqe.hpp"

using namespace wflo;

namespace {

std::vector<Amplitude> random_state(int q) {
  Rng rng(1);
  std::vector<Amplitude> a(std::size_t{1} << q);
  for (auto& z : a) z = {uniform01(rng), uniform01(rng)};
  return a;
}

DiagonalHamiltonian farm_hamiltonian(int l) {
  WindFarmModel m;
  m.geometry = GridGeometry(l);
  return qubo_to_hamiltonian(build_q(m, 1000.0, 4));
}

template <Backend B>
void BM_rotation(benchmark::State& state) {
  const int q = int(state.range(0));
  auto a = random_state(q);
  for (auto _ : state) {
    for (int bit = 0; bit < q; ++bit) kernels::apply_rotation(B, a, bit, RotationAxis::y, 0.3);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * q * std::int64_t(a.size()));
}

template <Backend B>
void BM_expectation(benchmark::State& state) {
  const int q = int(state.range(0));
  const auto a = random_state(q);
  std::vector<double> e(a.size(), 1.0), p(a.size());
  for (auto _ : state) {
    kernels::probabilities(B, a, p);
    benchmark::DoNotOptimize(kernels::expectation(B, a, e));
  }
}

template <Backend B>
void BM_diagonal(benchmark::State& state) {
  const auto h = farm_hamiltonian(4);
  std::vector<double> out(std::size_t{1} << 16);
  for (auto _ : state) {
    if constexpr (B == Backend::serial) {
      kernels::serial::diagonal_energies(h.terms(), out);
    } else {
      kernels::parallel::diagonal_energies(h.terms(), out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <Backend B>
void BM_ansatz(benchmark::State& state) {
  const AnsatzSpec s = AnsatzSpec::standard(int(state.range(0)));
  std::vector<double> theta(std::size_t(s.parameter_count()), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(apply_ansatz(s, theta, B));
}

template <Backend B>
void BM_exhaustive(benchmark::State& state) {
  WindFarmModel m;
  const QuboProblem q = build_q(m, 1000.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(optim::exhaustive_search(q, 4, optim::SearchMode::all, B));
}

}  // namespace

BENCHMARK(BM_rotation<Backend::serial>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_rotation<Backend::parallel>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_expectation<Backend::serial>)->Arg(16)->Arg(20);
BENCHMARK(BM_expectation<Backend::parallel>)->Arg(16)->Arg(20);
BENCHMARK(BM_diagonal<Backend::serial>);
BENCHMARK(BM_diagonal<Backend::parallel>);
BENCHMARK(BM_ansatz<Backend::serial>)->Arg(9)->Arg(16);
BENCHMARK(BM_ansatz<Backend::parallel>)->Arg(9)->Arg(16);
BENCHMARK(BM_exhaustive<Backend::serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exhaustive<Backend::parallel>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
