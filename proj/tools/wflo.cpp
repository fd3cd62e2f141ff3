// wflo: command-line front end for the layout optimisation suite.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wflo/harness/analysis.hpp"
#include "wflo/harness/experiment.hpp"
#include "wflo/harness/io.hpp"
#include "wflo/optim/exhaustive.hpp"
#include "wflo/qubo.hpp"
#include "wflo/vqe.hpp"

namespace fs = std::filesystem;
using namespace wflo;
using namespace wflo::harness;

namespace {

// Flags shared by the subcommands. Anything left unset keeps the value
// from --config (or the built-in default).
struct CommonFlags {
  std::string config_path;
  std::optional<int> l_grid, m, layers, runs, workers;
  std::optional<double> lambda1, alpha;
  std::optional<std::uint64_t> shots, seed;
  std::optional<std::string> method;
  std::string out = ".";
  bool timing = false;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("--l-grid", f.l_grid, "grid side length");
  sub->add_option("--m", f.m, "number of turbines");
  sub->add_option("--lambda1", f.lambda1, "turbine-count penalty weight");
  sub->add_option("--alpha", f.alpha, "CVaR fraction in (0, 1]");
  sub->add_option("--shots", f.shots, "measurement shots per energy estimate");
  sub->add_option("--layers", f.layers, "ansatz layers (0 = one per qubit)");
  sub->add_option("--runs", f.runs, "number of seeded runs");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--method", f.method,
                  "exhaustive | sa | vqe-cobyla | vqe-powell | vqe-bo | vqe-exact");
  sub->add_option("--workers", f.workers, "concurrent runs (0 = all cores)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_flag("--timing", f.timing, "record wall-clock times (output no longer reproducible)");
}

ExperimentConfig resolve(const CommonFlags& f) {
  ExperimentConfig c;
  if (!f.config_path.empty()) c = config_from_json(nlohmann::json::parse(read_file(f.config_path)));
  if (f.l_grid) c.l_grid = *f.l_grid;
  if (f.m) c.m = *f.m;
  if (f.lambda1) c.lambda1 = *f.lambda1;
  if (f.alpha) c.cvar_alpha = *f.alpha;
  if (f.shots) c.shots = *f.shots;
  if (f.layers) c.layers = *f.layers;
  if (f.runs) c.num_runs = *f.runs;
  if (f.seed) c.master_seed = *f.seed;
  if (f.method) c.method = parse_method(*f.method);
  if (f.workers) c.workers = *f.workers;
  if (f.timing) c.record_timing = true;
  return c;
}

void emit(const fs::path& dir, const std::string& name, const std::string& content) {
  write_file(dir / name, content);
  std::cout << "wrote " << (dir / name).string() << '\n';
}

double optimum_for(const ExperimentConfig& c) {
  return optim::exhaustive_power(c.model(), c.m, optim::SearchMode::feasible_only).optimum;
}

void write_records(const fs::path& dir, const std::vector<RunRecord>& records) {
  emit(dir, "records.json", dump_json(records_to_json(records)));
  emit(dir, "records.csv", records_csv(records));
}

OrderedJson summary_json(const ExperimentConfig& c, const std::vector<RunRecord>& records) {
  OrderedJson j = OrderedJson::object();
  j["method"] = std::string(method_name(c.method));
  j["runs"] = records.size();
  std::vector<double> powers;
  for (const auto& r : records)
    if (r.success()) powers.push_back(r.power_kw);
  j["successes"] = powers.size();
  j["failures"] = records.size() - powers.size();
  if (c.l_grid * c.l_grid <= optim::kMaxExhaustiveSites && c.xi == 0.0) {
    const double opt = optimum_for(c);
    j["optimal_power_kW"] = opt;
    std::size_t hits = 0;
    for (double p : powers) hits += std::abs(p - opt) <= 1e-9 * opt;
    j["optimal_runs"] = hits;
    if (opt > 0.0) {
      const PercentOfOptimal pct = percent_of_optimal(records, opt);
      j["percent_of_optimal"] = pct.flagged ? OrderedJson(nullptr) : OrderedJson(pct.percent);
    }
  }
  j["power_stats"] = powers.empty() ? OrderedJson(nullptr) : box_stats_json(box_stats(powers));
  return j;
}

void print_summary(const OrderedJson& s) {
  std::cout << s.at("method").get<std::string>() << ": " << s.at("successes").get<std::size_t>()
            << '/' << s.at("runs").get<std::size_t>() << " runs with a valid layout";
  if (s.contains("percent_of_optimal") && s.at("percent_of_optimal").is_number()) {
    std::printf("; %.2f%% of optimal, %zu optimal", s.at("percent_of_optimal").get<double>(),
                s.at("optimal_runs").get<std::size_t>());
    std::fflush(stdout);
  }
  std::cout << '\n';
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<Layout> read_layouts(const fs::path& path) {
  const auto doc = nlohmann::json::parse(read_file(path));
  const auto& list = doc.is_object() ? doc.at("layouts") : doc;
  std::vector<Layout> out;
  for (const auto& s : list) out.push_back(Layout::from_string(s.get<std::string>()));
  return out;
}

std::vector<RotationAxis> parse_axes(const std::string& text) {
  std::vector<RotationAxis> axes;
  for (char ch : text) {
    if (ch == 'x' || ch == 'X') {
      axes.push_back(RotationAxis::x);
    } else if (ch == 'y' || ch == 'Y') {
      axes.push_back(RotationAxis::y);
    } else {
      throw std::invalid_argument("axes must be a string over {x, y}");
    }
  }
  if (axes.empty()) throw std::invalid_argument("axes must not be empty");
  return axes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind farm layout optimisation: QUBO construction, VQE simulation and baselines"};
  app.require_subcommand(1);

  CommonFlags f;

  auto* build = app.add_subcommand("build-qubo", "write the QUBO of a problem as JSON");
  add_common(build, f);

  auto* solve = app.add_subcommand("solve", "one seeded run of a method");
  add_common(solve, f);

  auto* farm = app.add_subcommand("farm", "many seeded runs of a method");
  add_common(farm, f);

  auto* enumerate = app.add_subcommand("enumerate-optimal", "all layouts of maximal power");
  add_common(enumerate, f);

  std::string layouts_path;
  auto* heat = app.add_subcommand("heatmap", "mean placement over a set of layouts");
  add_common(heat, f);
  heat->add_option("--layouts", layouts_path, "optimal.json or JSON array of 0/1 strings (default: enumerate)")
      ->check(CLI::ExistingFile);

  std::string grids = "2,3,4";
  int repeats = 3;
  double log_base = 10.0;
  auto* bench = app.add_subcommand("bench", "time a method over several grid sizes and fit V^alpha");
  add_common(bench, f);
  bench->add_option("--l-grids", grids, "comma-separated grid sizes");
  bench->add_option("--repeats", repeats, "timed runs per grid size")->check(CLI::PositiveNumber);
  bench->add_option("--log-base", log_base, "logarithm base of the fit");

  std::optional<int> qubits;
  std::string axes = "yx";
  auto* dea = app.add_subcommand("dea-check", "dimensional expressivity of the ansatz");
  add_common(dea, f);
  dea->add_option("--qubits", qubits, "register size (default l_grid^2)");
  dea->add_option("--axes", axes, "layer axis cycle, e.g. yx or y");

  std::string input;
  std::optional<double> optimal_power;
  auto* stats = app.add_subcommand("stats", "sample mean and box-plot summary of run powers");
  add_common(stats, f);
  stats->add_option("--input", input, "records.json, JSON number array or plain number list")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_option("--optimal", optimal_power, "optimal power for percent-of-optimal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << '\n';
    return app.exit(e);
  }

  try {
    ExperimentConfig c = resolve(f);
    const fs::path out = f.out;

    if (*build) {
      c.validate();
      emit(out, "qubo.json", to_json(c.problem()).dump(2) + "\n");
    } else if (*solve) {
      c.num_runs = 1;
      c.validate();
      const std::vector<RunRecord> records{run_single(c, 0)};
      write_records(out, records);
      const RunRecord& r = records.front();
      if (!r.error.empty()) std::cerr << "run failed: " << r.error << '\n';
      std::cout << method_name(c.method) << ": "
                << (r.layout ? r.layout->to_string() + " power " + format_double(r.power_kw) + " kW"
                             : std::string("no valid layout"))
                << '\n';
    } else if (*farm) {
      const std::vector<RunRecord> records = run_experiment(c);
      write_records(out, records);
      const OrderedJson s = summary_json(c, records);
      emit(out, "summary.json", dump_json(s));
      print_summary(s);
    } else if (*enumerate) {
      const std::vector<Layout> optimal = enumerate_degenerate(c);
      const double power = optimal.empty() ? 0.0 : objective_f(optimal.front(), c.model());
      emit(out, "optimal.json", dump_json(optimal_json(optimal, power)));
      std::string csv = "layout,power_kW\n";
      for (const auto& x : optimal) csv += x.to_string() + "," + format_double(objective_f(x, c.model())) + "\n";
      emit(out, "optimal.csv", csv);
      std::cout << optimal.size() << " optimal layouts at " << format_double(power) << " kW\n";
    } else if (*heat) {
      const std::vector<Layout> layouts = layouts_path.empty() ? enumerate_degenerate(c) : read_layouts(layouts_path);
      if (layouts.empty()) throw std::invalid_argument("no layouts to average");
      const int side = static_cast<int>(std::lround(std::sqrt(double(layouts.front().size()))));
      if (side * side != static_cast<int>(layouts.front().size())) {
        throw std::invalid_argument("layout length is not a square number");
      }
      const HeatmapResult h = mean_placement(layouts, GridGeometry(side));
      emit(out, "heatmap.csv", heatmap_csv(h));
      emit(out, "heatmap.json", dump_json(heatmap_json(h)));
    } else if (*bench) {
      std::vector<std::pair<double, double>> timings;
      std::string csv = "l_grid,V,repeat,seconds\n";
      c.num_runs = 1;
      for (int l : parse_int_list(grids)) {
        ExperimentConfig cl = c;
        cl.l_grid = l;
        cl.validate();
        double total = 0.0;
        for (int r = 0; r < repeats; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          const RunRecord rec = run_single(cl, r);
          const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          if (!rec.error.empty()) throw std::runtime_error("benchmark run failed: " + rec.error);
          total += dt;
          csv += std::to_string(l) + "," + std::to_string(l * l) + "," + std::to_string(r) + "," +
                 format_double(dt) + "\n";
        }
        timings.emplace_back(double(l * l), total / repeats);
      }
      const ScalingFit fit = fit_scaling(timings, log_base);
      emit(out, "bench.csv", csv);
      emit(out, "scaling.json", dump_json(scaling_json(fit)));
      std::printf("time ~ V^%.3f (intercept %.3f, log base %g)\n", fit.slope, fit.intercept, fit.log_base);
    } else if (*dea) {
      AnsatzSpec spec;
      spec.num_qubits = qubits ? *qubits : c.l_grid * c.l_grid;
      spec.num_layers = c.layers > 0 ? c.layers : spec.num_qubits;
      spec.layer_axes = parse_axes(axes);
      spec.validate();
      Rng rng(c.master_seed);
      std::vector<double> theta(std::size_t(spec.parameter_count()));
      for (double& t : theta) t = uniform_angle(rng);
      const auto verdicts = dea_check(spec, theta);
      OrderedJson arr = OrderedJson::array();
      std::string csv = "parameter,independent,eigen_ratio\n";
      int independent = 0;
      for (const auto& v : verdicts) {
        independent += v.independent;
        OrderedJson j = OrderedJson::object();
        j["parameter"] = v.index;
        j["independent"] = v.independent;
        j["eigen_ratio"] = v.eigen_ratio;
        arr.push_back(j);
        csv += std::to_string(v.index) + "," + (v.independent ? "true" : "false") + "," +
               format_double(v.eigen_ratio) + "\n";
      }
      emit(out, "dea.json", dump_json(arr));
      emit(out, "dea.csv", csv);
      std::cout << independent << '/' << verdicts.size() << " parameters independent\n";
    } else if (*stats) {
      const std::vector<double> values = read_values(input);
      if (values.empty()) throw std::invalid_argument("no values in " + input);
      const double opt = optimal_power ? *optimal_power : optimum_for(c);
      const BoxStats b = box_stats(values);
      const PercentOfOptimal pct = percent_of_optimal(values, opt);
      OrderedJson j = OrderedJson::object();
      j["n"] = b.n;
      j["sample_mean"] = b.mean;
      j["optimal_power_kW"] = opt;
      j["percent_of_optimal"] = pct.percent;
      j["box"] = box_stats_json(b);
      emit(out, "stats.json", dump_json(j));
      emit(out, "stats.csv",
           "n,mean,percent_of_optimal,min,q1,median,q3,max,whisker_low,whisker_high,outliers\n" +
               std::to_string(b.n) + "," + format_double(b.mean) + "," + format_double(pct.percent) + "," +
               format_double(b.min) + "," + format_double(b.q1) + "," + format_double(b.median) + "," +
               format_double(b.q3) + "," + format_double(b.max) + "," + format_double(b.whisker_low) + "," +
               format_double(b.whisker_high) + "," + std::to_string(b.outliers.size()) + "\n");
      std::printf("n=%zu mean=%.4f percent_of_optimal=%.3f\n", b.n, b.mean, pct.percent);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
