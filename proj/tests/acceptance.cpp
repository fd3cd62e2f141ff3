// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `--only 4,9` restricts the run.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "wflo/harness/analysis.hpp"
#include "wflo/harness/experiment.hpp"
#include "wflo/optim/bayes.hpp"
#include "wflo/optim/exhaustive.hpp"
#include "wflo/pauli.hpp"
#include "wflo/qubo.hpp"
#include "wflo/rng.hpp"
#include "wflo/vqe.hpp"

using namespace wflo;
using namespace wflo::harness;
namespace opt = wflo::optim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

WindFarmModel model_for(int l) {
  WindFarmModel m;
  m.geometry = GridGeometry(l);
  return m;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome c1_optimum() {
  const auto r = opt::exhaustive_power(model_for(4), 4, opt::SearchMode::feasible_only);
  const bool ok = std::abs(r.optimum - 2304.0) <= 1e-9 * 2304.0;
  return {ok, fmt("max power %.10g kW", r.optimum)};
}

Outcome c2_degeneracy() {
  const auto got = enumerate_degenerate(ExperimentConfig{});
  const auto want = fixtures::optimal_lgrid4();
  return {got == want, fmt("%g layouts, fixture %g", double(got.size()), double(want.size()))};
}

Outcome c3_counts() {
  const auto feasible = opt::exhaustive_power(model_for(4), 4, opt::SearchMode::feasible_only);
  const auto all = opt::exhaustive_power(model_for(4), 4, opt::SearchMode::all);
  const bool ok = feasible.visited == 1820 && all.visited == 65536;
  return {ok, fmt("feasible %g, total %g", double(feasible.visited), double(all.visited))};
}

Outcome c4_identity() {
  double worst = 0.0;
  bool sets_match = true;
  for (int l : {3, 4}) {
    const WindFarmModel m = model_for(l);
    const WakeInteractions w(m);
    const QuboProblem q = build_q(m, 1000.0, 4);
    const int n = l * l;
    for (std::uint64_t label = 0; label < (1ULL << n); ++label) {
      const Layout x = Layout::from_label(label, n);
      const double lhs = evaluate_qubo(q, label) + q.constant_offset;
      const double rhs = -objective_f(x, w) + penalty_g(x, 1000.0, 0.0, 4, 0.0, m.geometry);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    const auto qmin = opt::exhaustive_search(q, 4, opt::SearchMode::feasible_only);
    const auto pmax = opt::exhaustive_power(m, 4, opt::SearchMode::feasible_only);
    sets_match = sets_match && qmin.optimal == pmax.optimal;
  }
  return {worst <= 1e-9 && sets_match,
          fmt("max |residual| %.3g, argmin == argmax: ", worst) + (sets_match ? "yes" : "no")};
}

Outcome c5_pauli() {
  Rng rng(5);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int q = 1 + int(rng() % 10);
    QuboProblem p(q);
    for (int i = 0; i < q; ++i)
      for (int j = i; j < q; ++j) p.set(i, j, 200.0 * uniform01(rng) - 100.0);
    const auto h = qubo_to_hamiltonian(p);
    for (std::uint64_t label = 0; label < (1ULL << q); ++label) {
      worst = std::max(worst, std::abs(basis_energy(h, label) - evaluate_qubo(p, label)));
    }
  }
  return {worst <= 1e-9, fmt("100 QUBOs, max |difference| %.3g", worst)};
}

Outcome c6_cvar() {
  Rng rng(6);
  std::vector<double> s(1000);
  for (auto& v : s) v = 50.0 * uniform01(rng) - 25.0;
  std::vector<double> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  double direct = 0.0;
  for (double v : sorted) direct += v;
  // the estimator sums in ascending order, so the mean must come out bit-equal
  const bool mean_ok = cvar_estimate(s, 1.0) == direct / 1000.0;
  bool monotone = true;
  double prev = -1e300;
  for (int k = 1; k <= 2000; ++k) {
    const double c = cvar_estimate(s, k / 2000.0);
    monotone = monotone && c >= prev;
    prev = c;
  }
  const bool toy = cvar_estimate(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}, 0.25) == 1.5;
  return {mean_ok && monotone && toy, std::string("alpha=1 mean ") + (mean_ok ? "exact" : "off") +
                                          ", monotone " + (monotone ? "yes" : "no") + ", {1..8}@0.25 " +
                                          (toy ? "1.5" : "wrong")};
}

Outcome c7_heatmap() {
  const auto h = mean_placement(fixtures::optimal_lgrid4(), GridGeometry(4));
  double interior = 0.0;
  for (int r = 2; r <= 3; ++r)
    for (int c = 2; c <= 3; ++c) interior = std::max(interior, h.at(r, c));
  double corner = 1.0;
  for (int r : {1, 4})
    for (int c : {1, 4}) corner = std::min(corner, h.at(r, c));
  const bool ok = std::abs(h.total() - 4.0) <= 1e-9 && corner > interior;
  return {ok, fmt("sum %.12g, min corner %.4f, max interior %.4f", h.total(), corner, interior)};
}

Outcome c8_dea() {
  bool full = true;
  for (int q : {2, 3}) {
    const AnsatzSpec s = AnsatzSpec::standard(q);
    Rng rng(80 + std::uint64_t(q));
    for (int t = 0; t < 5; ++t) {
      std::vector<double> theta(std::size_t(s.parameter_count()));
      for (auto& v : theta) v = uniform_angle(rng);
      for (const auto& p : dea_check(s, theta)) full = full && p.independent;
    }
  }

  AnsatzSpec dup;
  dup.num_qubits = 1;
  dup.num_layers = 2;
  dup.layer_axes = {RotationAxis::y};
  dup.entangle = false;
  const auto v = dea_check(dup, std::vector<double>{0.4, 1.9});
  const bool redundant = v.size() == 2 && v[0].independent && !v[1].independent;

  double worst = 0.0;
  const double h = 1e-5;
  for (int q : {2, 3}) {
    const AnsatzSpec s = AnsatzSpec::standard(q);
    Rng rng(90 + std::uint64_t(q));
    std::vector<double> theta(std::size_t(s.parameter_count()));
    for (auto& t : theta) t = uniform_angle(rng);
    const auto j = dea_jacobian(s, theta);
    for (int k = 0; k < s.parameter_count(); ++k) {
      auto up = theta, down = theta;
      up[std::size_t(k)] += h;
      down[std::size_t(k)] -= h;
      const auto a = apply_ansatz(s, up), b = apply_ansatz(s, down);
      for (std::size_t i = 0; i < a.dimension(); ++i) {
        const Amplitude fd = (a[i] - b[i]) / (2 * h);
        worst = std::max(worst, std::abs(j(Eigen::Index(i), k) - fd.real()));
        worst = std::max(worst, std::abs(j(Eigen::Index(a.dimension() + i), k) - fd.imag()));
      }
    }
  }
  const bool ok = full && redundant && worst <= 1e-6;
  return {ok, std::string("full rank ") + (full ? "yes" : "no") + ", duplicate flagged " +
                  (redundant ? "yes" : "no") + fmt(", max |J - FD| %.3g", worst)};
}

// Fixed before any run was looked at: three alternating Y/X layers, the
// COBYLA trust region opened to pi so the first simplex spans the angle
// range, everything else at its default.
Outcome c9_vqe() {
  const double best = opt::exhaustive_power(model_for(3), 4, opt::SearchMode::feasible_only).optimum;
  bool ok = true;
  std::ostringstream detail;
  for (double alpha : {0.25, 1.0}) {
    ExperimentConfig c;
    c.l_grid = 3;
    c.m = 4;
    c.method = Method::vqe_cobyla;
    c.cvar_alpha = alpha;
    c.shots = 1024;
    c.layers = 3;
    c.num_runs = 12;
    c.master_seed = 0;
    c.cobyla.rho_begin = std::numbers::pi;
    const auto recs = run_experiment(c);
    int optimal = 0;
    for (const auto& r : recs) optimal += r.success() && std::abs(r.power_kw - best) <= 1e-9 * best;
    // runs with no weight-4 sample are left out of the mean and counted
    const PercentOfOptimal p = percent_of_optimal(recs, best);
    const double pct = p.flagged ? 0.0 : p.percent;
    const bool pass = !p.flagged && pct >= 93.0 && optimal >= 1;
    ok = ok && pass;
    detail << "alpha " << alpha << ": " << fmt("%.2f%%", pct) << ", " << optimal << "/12 optimal, "
           << p.failures << " unselected"
           << (pass ? "" : " (short)") << "; ";
  }
  std::string d = detail.str();
  d.resize(d.size() - 2);
  return {ok, d};
}

Outcome c10_sa() {
  ExperimentConfig c;
  c.method = Method::sa;
  c.num_runs = 36;
  double best = 0.0;
  for (const auto& r : run_experiment(c)) best = std::max(best, r.power_kw);
  return {std::abs(best - 2304.0) <= 1e-9 * 2304.0, fmt("best of 36: %.10g kW", best)};
}

Outcome c11_stats() {
  const auto s36 = fixtures::numbers("cobyla_cvar025_36.txt");
  const auto s284 = fixtures::numbers("cobyla_cvar025_284.txt");
  const double m36 = sample_mean(s36), m284 = sample_mean(s284);
  const double pct = percent_of_optimal(s36, 2304.0).percent;
  const bool ok = s36.size() == 36 && s284.size() == 284 && std::abs(m36 - 2193.1) <= 0.05 &&
                  std::abs(pct - 95.2) <= 0.1 && std::abs(m284 - 2192.4) <= 0.05;
  return {ok, fmt("mean36 %.3f, pct %.3f, mean284 %.3f", m36, pct, m284)};
}

Outcome c12_scaling() {
  const std::pair<double, double> rows[] = {{4.24, -5.18}, {4.51, -5.67}, {4.57, -1.50}, {3.89, 0.04}};
  std::vector<ScalingFit> fits;
  double worst = 0.0;
  for (auto [slope, intercept] : rows) {
    std::vector<std::pair<double, double>> t;
    for (int l = 2; l <= 6; ++l) {
      const double v = double(l * l);
      t.emplace_back(v, std::pow(10.0, intercept) * std::pow(v, slope));
    }
    fits.push_back(fit_scaling(t));
    worst = std::max({worst, std::abs(fits.back().slope - slope), std::abs(fits.back().intercept - intercept)});
  }
  const double at = intersection_log_volume(fits[0], fits[3]);
  const bool ok = worst <= 1e-9 && std::abs(at - 15.0) <= 1.0;
  return {ok, fmt("max coefficient error %.3g, crossover at V = 10^%.2f", worst, at)};
}

Outcome c13_bo() {
  int hits = 0;
  opt::BoOptions o;
  o.budget = 30;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    opt::ObjectiveHandle f([](std::span<const double> x) { return std::cos(x[0]); });
    hits += opt::bo_minimize(f, 1, o, seed).value_best < -0.95;
  }
  const double s = 0.7;
  opt::KernelParams kp;
  kp.sigma = 1.3;
  const std::vector<double> th{2.1, 0.4};
  const bool k_ok = std::abs(opt::periodic_kernel(th, th, kp) - kp.sigma * kp.sigma) <= 1e-12;
  const bool ei0 = opt::expected_improvement(1.0, 0.0, 0.5) == 0.0 && opt::expected_improvement(0.5, 0.0, 0.5) == 0.0;
  const bool eis = std::abs(opt::expected_improvement(-1.0, s, -1.0) - s / std::sqrt(2.0 * std::numbers::pi)) <= 1e-12;
  const bool ok = hits >= 9 && k_ok && ei0 && eis;
  return {ok, fmt("cos below -0.95 in %g/10 seeds", hits) + ", unit cases " + (k_ok && ei0 && eis ? "hold" : "fail")};
}

std::set<int> parse_only(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) != "--only") continue;
    std::stringstream s(argv[i + 1]);
    for (std::string tok; std::getline(s, tok, ',');) only.insert(std::stoi(tok));
  }
  return only;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "optimal power 2304 kW", 5, c1_optimum},
      {2, "79 degenerate optima", 10, c2_degeneracy},
      {3, "feasible 1820 of 65536", 0, c3_counts},
      {4, "QUBO equals minus power plus penalty", 30, c4_identity},
      {5, "Pauli diagonal equals QUBO", 0, c5_pauli},
      {6, "CVaR properties", 0, c6_cvar},
      {7, "mean placement", 0, c7_heatmap},
      {8, "DEA", 0, c8_dea},
      {9, "VQE solution quality", 900, c9_vqe},
      {10, "SA best of 36", 60, c10_sa},
      {11, "sample statistics", 0, c11_stats},
      {12, "scaling regression", 0, c12_scaling},
      {13, "BO sanity", 0, c13_bo},
  };
  const std::set<int> only = parse_only(argc, argv);
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s limit)", c.limit_seconds);
    }
    failed += !o.pass;
    std::printf("%s  %2d  %-38s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
