#include "wflo/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "wflo/optim/annealing.hpp"
#include "wflo/optim/exhaustive.hpp"
#include "wflo/pauli.hpp"
#include "wflo/rng.hpp"
#include "wflo/vqe.hpp"

namespace wflo::harness {

namespace {

using nlohmann::json;

struct MethodName {
  Method method;
  std::string_view name;
};

constexpr MethodName kMethods[] = {
    {Method::exhaustive, "exhaustive"}, {Method::sa, "sa"},
    {Method::vqe_cobyla, "vqe-cobyla"}, {Method::vqe_powell, "vqe-powell"},
    {Method::vqe_bo, "vqe-bo"},         {Method::vqe_exact, "vqe-exact"},
};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string axis_name(RotationAxis a) { return a == RotationAxis::x ? "x" : "y"; }

RotationAxis parse_axis(const std::string& s) {
  if (s == "x" || s == "X") return RotationAxis::x;
  if (s == "y" || s == "Y") return RotationAxis::y;
  throw std::invalid_argument("unknown rotation axis '" + s + "'");
}

std::vector<HistoryPoint> compress(const std::vector<optim::HistoryEntry>& h, bool timing) {
  std::vector<HistoryPoint> out;
  out.reserve(h.size());
  for (const auto& e : h) out.push_back({e.iteration, e.value, timing ? e.wall_seconds : 0.0});
  return out;
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& e : kMethods) {
    if (e.method == m) return e.name;
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (const auto& e : kMethods) {
    if (e.name == name) return e.method;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected exhaustive, sa, vqe-cobyla, vqe-powell, vqe-bo or "
                              "vqe-exact)");
}

bool is_vqe(Method m) { return m != Method::exhaustive && m != Method::sa; }

void ExperimentConfig::validate() const {
  require(l_grid >= 1, "l_grid must be >= 1");
  const int q = l_grid * l_grid;
  require(m >= 0 && m <= q, "m must lie in 0..l_grid^2");
  require(xi >= 0.0 && std::isfinite(xi), "xi must be >= 0");
  require(lambda1 >= 0.0 && std::isfinite(lambda1), "lambda1 must be >= 0");
  require(lambda2 >= 0.0 && std::isfinite(lambda2), "lambda2 must be >= 0");
  wake.validate();
  require(cvar_alpha > 0.0 && cvar_alpha <= 1.0, "cvar_alpha must lie in (0, 1]");
  require(num_runs >= 1, "num_runs must be >= 1");
  require(workers >= 0, "workers must be >= 0");
  if (method == Method::exhaustive) {
    require(q <= optim::kMaxExhaustiveSites, "exhaustive search is limited to l_grid <= 4");
  }
  if (method == Method::sa) require(sa_sweeps >= 0, "sa_sweeps must be >= 0");
  if (is_vqe(method)) {
    require(q <= kMaxSimulatedQubits, "statevector simulation is limited to 24 qubits");
    require(layers >= 0, "layers must be >= 0");
    require(!layer_axes.empty(), "layer_axes must not be empty");
    require(method == Method::vqe_exact || shots >= 1, "shots must be >= 1");
    require(cobyla.rho_begin > 0.0 && cobyla.rho_end > 0.0 && cobyla.rho_end <= cobyla.rho_begin,
            "cobyla needs 0 < rho_end <= rho_begin");
    require(cobyla.max_evals >= 1, "cobyla max_evals must be >= 1");
    require(powell.max_evals >= 1 && powell.initial_step > 0.0, "invalid powell options");
    if (method == Method::vqe_bo) {
      bo.kernel.validate();
      require(bo.initial_points >= 1, "bo initial_points must be >= 1");
      require(bo.budget >= bo.initial_points, "bo budget must be >= initial_points");
    }
  }
}

WindFarmModel ExperimentConfig::model() const {
  WindFarmModel mdl;
  mdl.geometry = GridGeometry(l_grid);
  mdl.regime = regime;
  mdl.wake = wake;
  return mdl;
}

QuboProblem ExperimentConfig::problem() const {
  const WindFarmModel mdl = model();
  QuboProblem p = build_q(mdl, lambda1, m);
  p.xi = xi;
  p.lambda2 = lambda2;
  if (xi > 0.0 && lambda2 > 0.0) {
    for (int i = 0; i < p.size(); ++i)
      for (int j = i + 1; j < p.size(); ++j)
        if (mdl.geometry.distance(i, j) < xi) p.add(i, j, lambda2);
  }
  return p;
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig c;
  c.l_grid = doc.value("l_grid", c.l_grid);
  c.m = doc.value("m", c.m);
  c.xi = doc.value("xi", c.xi);
  c.lambda1 = doc.value("lambda1", c.lambda1);
  c.lambda2 = doc.value("lambda2", c.lambda2);
  if (doc.contains("arrangements") || doc.contains("wake")) {
    json farm = doc;
    farm["l_grid"] = c.l_grid;
    const WindFarmModel mdl = wind_farm_from_json(farm);
    c.regime = mdl.regime;
    c.wake = mdl.wake;
  }
  if (doc.contains("method")) c.method = parse_method(doc.at("method").get<std::string>());
  c.cvar_alpha = doc.value("cvar_alpha", c.cvar_alpha);
  c.shots = doc.value("shots", c.shots);
  c.layers = doc.value("layers", c.layers);
  if (doc.contains("layer_axes")) {
    c.layer_axes.clear();
    for (const auto& a : doc.at("layer_axes")) c.layer_axes.push_back(parse_axis(a.get<std::string>()));
  }
  c.num_runs = doc.value("num_runs", c.num_runs);
  c.master_seed = doc.value("master_seed", c.master_seed);
  c.workers = doc.value("workers", c.workers);
  c.sa_sweeps = doc.value("sa_sweeps", c.sa_sweeps);
  c.record_timing = doc.value("record_timing", c.record_timing);
  if (doc.contains("cobyla")) {
    const auto& o = doc.at("cobyla");
    c.cobyla.rho_begin = o.value("rho_begin", c.cobyla.rho_begin);
    c.cobyla.rho_end = o.value("rho_end", c.cobyla.rho_end);
    c.cobyla.max_evals = o.value("max_evals", c.cobyla.max_evals);
  }
  if (doc.contains("powell")) {
    const auto& o = doc.at("powell");
    c.powell.initial_step = o.value("initial_step", c.powell.initial_step);
    c.powell.ftol = o.value("ftol", c.powell.ftol);
    c.powell.line_tol = o.value("line_tol", c.powell.line_tol);
    c.powell.max_evals = o.value("max_evals", c.powell.max_evals);
  }
  if (doc.contains("bo")) {
    const auto& o = doc.at("bo");
    c.bo.budget = o.value("budget", c.bo.budget);
    c.bo.initial_points = o.value("initial_points", c.bo.initial_points);
    c.bo.noise_repeats = o.value("noise_repeats", c.bo.noise_repeats);
    c.bo.acquisition_starts = o.value("acquisition_starts", c.bo.acquisition_starts);
    c.bo.kernel.sigma = o.value("sigma", c.bo.kernel.sigma);
    c.bo.kernel.length = o.value("length", c.bo.kernel.length);
    c.bo.kernel.period = o.value("period", c.bo.kernel.period);
    if (o.contains("kernel_form")) {
      const auto f = o.at("kernel_form").get<std::string>();
      if (f == "standard") {
        c.bo.kernel.form = optim::KernelForm::standard;
      } else if (f == "as_printed") {
        c.bo.kernel.form = optim::KernelForm::as_printed;
      } else {
        throw std::invalid_argument("kernel_form must be 'standard' or 'as_printed'");
      }
    }
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  json doc = json::object();
  doc["l_grid"] = c.l_grid;
  doc["m"] = c.m;
  doc["xi"] = c.xi;
  doc["lambda1"] = c.lambda1;
  doc["lambda2"] = c.lambda2;
  const json farm = to_json(c.model());
  doc["arrangements"] = farm.at("arrangements");
  doc["wake"] = farm.at("wake");
  doc["method"] = std::string(method_name(c.method));
  doc["cvar_alpha"] = c.cvar_alpha;
  doc["shots"] = c.shots;
  doc["layers"] = c.layers;
  json axes = json::array();
  for (auto a : c.layer_axes) axes.push_back(axis_name(a));
  doc["layer_axes"] = axes;
  doc["num_runs"] = c.num_runs;
  doc["master_seed"] = c.master_seed;
  doc["workers"] = c.workers;
  doc["sa_sweeps"] = c.sa_sweeps;
  doc["record_timing"] = c.record_timing;
  doc["cobyla"] = {{"rho_begin", c.cobyla.rho_begin},
                   {"rho_end", c.cobyla.rho_end},
                   {"max_evals", c.cobyla.max_evals}};
  doc["powell"] = {{"initial_step", c.powell.initial_step},
                   {"ftol", c.powell.ftol},
                   {"line_tol", c.powell.line_tol},
                   {"max_evals", c.powell.max_evals}};
  doc["bo"] = {{"budget", c.bo.budget},
               {"initial_points", c.bo.initial_points},
               {"noise_repeats", c.bo.noise_repeats},
               {"acquisition_starts", c.bo.acquisition_starts},
               {"sigma", c.bo.kernel.sigma},
               {"length", c.bo.kernel.length},
               {"period", c.bo.kernel.period},
               {"kernel_form",
                c.bo.kernel.form == optim::KernelForm::standard ? "standard" : "as_printed"}};
  return doc;
}

namespace {

// Problem data shared read-only by all runs of a farm.
struct Context {
  const ExperimentConfig& config;
  WindFarmModel model;
  WakeInteractions wakes;
  QuboProblem problem;
  std::vector<double> diagonal;  // Hamiltonian diagonal, VQE only
  Backend kernels;

  Context(const ExperimentConfig& c, Backend kernel_backend)
      : config(c), model(c.model()), wakes(model), problem(c.problem()), kernels(kernel_backend) {
    if (is_vqe(c.method)) diagonal = diagonal_energies(qubo_to_hamiltonian(problem));
  }
};

void score(const Context& ctx, RunRecord& rec, const Layout& layout) {
  if (!is_feasible(layout, ctx.config.m, ctx.config.xi, ctx.model.geometry)) return;
  rec.layout = layout;
  rec.power_kw = objective_f(layout, ctx.wakes);
}

void run_vqe(const Context& ctx, RunRecord& rec) {
  const ExperimentConfig& c = ctx.config;
  AnsatzSpec spec;
  spec.num_qubits = ctx.problem.size();
  spec.num_layers = c.layers > 0 ? c.layers : spec.num_qubits;
  spec.layer_axes = c.layer_axes;

  Rng rng(rec.seed);
  std::vector<double> theta0(std::size_t(spec.parameter_count()));
  for (double& t : theta0) t = uniform_angle(rng);

  ExpectationMode mode;
  if (c.method == Method::vqe_exact) {
    mode = c.cvar_alpha < 1.0 ? ExpectationMode::exact_cvar_mode(c.cvar_alpha)
                              : ExpectationMode::exact();
  } else {
    mode = ExpectationMode::sampled(c.shots, c.cvar_alpha, split_seed(rec.seed, 1));
  }
  VqeEnergy energy(spec, ctx.diagonal, mode, ctx.kernels);
  optim::ObjectiveHandle handle([&](std::span<const double> t) { return energy(t); });

  optim::OptimizeResult result;
  switch (c.method) {
    case Method::vqe_cobyla:
    case Method::vqe_exact:
      result = optim::cobyla_minimize(handle, theta0, c.cobyla);
      break;
    case Method::vqe_powell:
      result = optim::powell_minimize(handle, theta0, c.powell);
      break;
    case Method::vqe_bo:
      result = optim::bo_minimize(handle, theta0.size(), c.bo, split_seed(rec.seed, 2));
      break;
    default:
      throw std::logic_error("not a VQE method");
  }
  rec.final_value = result.value_best;
  rec.evaluations = result.evaluations;
  rec.history = compress(handle.history(), c.record_timing);

  std::optional<Layout> chosen;
  if (c.method == Method::vqe_exact) {
    chosen = select_solution(energy.state(result.theta_best), c.m);
  } else {
    chosen = select_solution(energy.measure(result.theta_best), c.m);
  }
  if (chosen) score(ctx, rec, *chosen);
}

void run_sa(const Context& ctx, RunRecord& rec) {
  optim::SaSchedule schedule = optim::SaSchedule::defaults_for(ctx.problem);
  schedule.sweeps = ctx.config.sa_sweeps;
  const optim::SaResult r = optim::simulated_annealing(ctx.problem, schedule, rec.seed);
  rec.final_value = r.value;
  rec.evaluations = std::size_t(schedule.sweeps) * std::size_t(ctx.problem.size());
  rec.history.reserve(r.trace.size());
  for (std::size_t s = 0; s < r.trace.size(); ++s) rec.history.push_back({s + 1, r.trace[s], 0.0});
  score(ctx, rec, r.best);
}

void run_exhaustive(const Context& ctx, RunRecord& rec) {
  const auto r = optim::exhaustive_power(ctx.model, ctx.config.m, optim::SearchMode::feasible_only,
                                         Backend::serial);
  rec.final_value = r.optimum;
  rec.evaluations = r.visited;
  if (!r.optimal.empty()) score(ctx, rec, r.optimal.front());
}

RunRecord run_with(const Context& ctx, int run_index) {
  const ExperimentConfig& c = ctx.config;
  RunRecord rec;
  rec.run_index = run_index;
  rec.seed = split_seed(c.master_seed, std::uint64_t(run_index));
  rec.method = c.method;
  rec.alpha = c.cvar_alpha;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (c.method) {
      case Method::exhaustive:
        run_exhaustive(ctx, rec);
        break;
      case Method::sa:
        run_sa(ctx, rec);
        break;
      default:
        run_vqe(ctx, rec);
    }
  } catch (const std::exception& e) {
    rec.layout.reset();
    rec.power_kw = 0.0;
    rec.error = e.what();
  }
  if (c.record_timing) {
    rec.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

}  // namespace

RunRecord run_single(const ExperimentConfig& config, int run_index) {
  config.validate();
  const Context ctx(config, config.backend);
  return run_with(ctx, run_index);
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
  // with several runs in flight the state-vector kernels stay single-threaded
  const bool concurrent = threads > 1 && config.num_runs > 1;
  const Context ctx(config, concurrent ? Backend::serial : config.backend);
  std::vector<RunRecord> records(std::size_t(config.num_runs));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int r = 0; r < config.num_runs; ++r) records[std::size_t(r)] = run_with(ctx, r);
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.run_index < b.run_index; });
  return records;
}

}  // namespace wflo::harness
