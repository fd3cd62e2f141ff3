#include "wflo/harness/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wflo::harness {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const OrderedJson& v, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(std::size_t(indent * d), ' ');
  };
  switch (v.type()) {
    case OrderedJson::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    case OrderedJson::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += OrderedJson(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(item, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case OrderedJson::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& item : v) flat = flat && !item.is_structured();
      if (flat && v.size() <= 8) {
        // short scalar rows (history points, coordinates) stay on one line
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i > 0) out += ", ";
          dump_into(v[i], indent, depth + 1, out);
        }
        out += ']';
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(item, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    default:
      out += v.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::string dump_json(const OrderedJson& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  out += '\n';
  return out;
}

OrderedJson to_ordered_json(const RunRecord& r) {
  OrderedJson j = OrderedJson::object();
  j["run_index"] = r.run_index;
  j["seed"] = r.seed;
  j["method"] = std::string(method_name(r.method));
  j["alpha"] = r.alpha;
  j["selected_layout"] = r.layout ? OrderedJson(r.layout->to_string()) : OrderedJson(nullptr);
  j["power_kW"] = r.power_kw;
  j["final_value"] = r.final_value;
  j["evaluations"] = r.evaluations;
  j["wall_time_seconds"] = r.wall_time_seconds;
  OrderedJson hist = OrderedJson::array();
  for (const auto& h : r.history) hist.push_back(OrderedJson::array({h.iteration, h.value, h.wall_seconds}));
  j["objective_history"] = std::move(hist);
  j["error"] = r.error;
  return j;
}

OrderedJson records_to_json(std::span<const RunRecord> records) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& r : records) arr.push_back(to_ordered_json(r));
  return arr;
}

std::vector<RunRecord> records_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw std::invalid_argument("records file must hold a JSON array");
  std::vector<RunRecord> out;
  for (const auto& j : doc) {
    RunRecord r;
    r.run_index = j.at("run_index").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.method = parse_method(j.at("method").get<std::string>());
    r.alpha = j.value("alpha", 1.0);
    if (j.contains("selected_layout") && j.at("selected_layout").is_string()) {
      r.layout = Layout::from_string(j.at("selected_layout").get<std::string>());
    }
    auto num = [&](const char* key) {
      return j.contains(key) && j.at(key).is_number() ? j.at(key).get<double>() : 0.0;
    };
    r.power_kw = num("power_kW");
    r.final_value = num("final_value");
    r.evaluations = j.value("evaluations", std::size_t{0});
    r.wall_time_seconds = num("wall_time_seconds");
    if (j.contains("objective_history")) {
      for (const auto& h : j.at("objective_history")) {
        r.history.push_back({h.at(0).get<std::size_t>(), h.at(1).is_number() ? h.at(1).get<double>() : 0.0,
                             h.at(2).get<double>()});
      }
    }
    r.error = j.value("error", std::string{});
    out.push_back(std::move(r));
  }
  return out;
}

std::string records_csv(std::span<const RunRecord> records) {
  std::ostringstream s;
  s << "run_index,seed,method,alpha,selected_layout,power_kW,final_value,evaluations,"
       "wall_time_seconds,error\n";
  for (const auto& r : records) {
    s << r.run_index << ',' << r.seed << ',' << method_name(r.method) << ','
      << format_double(r.alpha) << ',' << (r.layout ? r.layout->to_string() : "") << ','
      << format_double(r.power_kw) << ',' << format_double(r.final_value) << ',' << r.evaluations
      << ',' << format_double(r.wall_time_seconds) << ',' << csv_field(r.error) << '\n';
  }
  return s.str();
}

std::string heatmap_csv(const HeatmapResult& h) {
  std::string out;
  for (int r = 1; r <= h.l_grid; ++r) {
    for (int c = 1; c <= h.l_grid; ++c) {
      if (c > 1) out += ',';
      out += format_double(h.at(r, c));
    }
    out += '\n';
  }
  return out;
}

OrderedJson heatmap_json(const HeatmapResult& h) {
  OrderedJson rows = OrderedJson::array();
  for (int r = 1; r <= h.l_grid; ++r) {
    OrderedJson row = OrderedJson::array();
    for (int c = 1; c <= h.l_grid; ++c) row.push_back(h.at(r, c));
    rows.push_back(std::move(row));
  }
  OrderedJson j = OrderedJson::object();
  j["l_grid"] = h.l_grid;
  j["total"] = h.total();
  j["mean_placement"] = std::move(rows);
  return j;
}

OrderedJson scaling_json(const ScalingFit& fit) {
  OrderedJson pts = OrderedJson::array();
  for (const auto& [x, y] : fit.points) pts.push_back(OrderedJson::array({x, y}));
  OrderedJson j = OrderedJson::object();
  j["log_base"] = fit.log_base;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["points"] = std::move(pts);
  return j;
}

OrderedJson optimal_json(std::span<const Layout> layouts, double power_kw) {
  OrderedJson list = OrderedJson::array();
  for (const Layout& x : layouts) list.push_back(x.to_string());
  OrderedJson j = OrderedJson::object();
  j["power_kW"] = power_kw;
  j["count"] = layouts.size();
  j["layouts"] = std::move(list);
  return j;
}

OrderedJson box_stats_json(const BoxStats& b) {
  OrderedJson j = OrderedJson::object();
  j["n"] = b.n;
  j["mean"] = b.mean;
  j["min"] = b.min;
  j["q1"] = b.q1;
  j["median"] = b.median;
  j["q3"] = b.q3;
  j["max"] = b.max;
  j["whisker_low"] = b.whisker_low;
  j["whisker_high"] = b.whisker_high;
  j["outliers"] = b.outliers;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<double> read_values(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<double> out;
  if (first != std::string::npos && text[first] == '[') {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.empty() && doc.front().is_object()) {
      for (const RunRecord& r : records_from_json(doc)) {
        if (r.success()) out.push_back(r.power_kw);
      }
      return out;
    }
    for (const auto& v : doc) out.push_back(v.get<double>());
    return out;
  }
  std::istringstream s(text);
  std::string token;
  while (s >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::invalid_argument("not a number in " + path.string() + ": " + token);
    out.push_back(v);
  }
  return out;
}

}  // namespace wflo::harness
