#include "wflo/wake_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wflo {

namespace {

constexpr double kConeTolerance = 1e-9;

double cube(double v) { return v * v * v; }

}  // namespace

WindRegime::WindRegime(std::vector<WindArrangement> arrangements)
    : arrangements_(std::move(arrangements)) {
  if (arrangements_.empty()) throw std::invalid_argument("wind regime is empty");
  double total = 0.0;
  for (const auto& d : arrangements_) {
    if (!(d.probability >= 0.0)) throw std::invalid_argument("negative wind probability");
    if (!(d.speed > 0.0)) throw std::invalid_argument("wind speed must be positive");
    total += d.probability;
  }
  if (std::abs(total - 1.0) >= 1e-12) {
    throw std::invalid_argument("wind probabilities sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

double WindRegime::free_power() const {
  double p = 0.0;
  for (const auto& d : arrangements_) p += d.probability * cube(d.speed) / 3.0;
  return p;
}

WindRegime mosetti_regime_2() {
  // The printed index range k = 0..36 would give 37 entries; the weight
  // 1/36 and the stated last angle (350) fix it at 36.
  std::vector<WindArrangement> d;
  d.reserve(36);
  for (int k = 0; k < 36; ++k) d.push_back({10.0 * k, 12.0, 1.0 / 36.0});
  return WindRegime(std::move(d));
}

void WakeParams::validate() const {
  if (!(x_max > 0.0)) throw std::invalid_argument("wake length x_max must be positive");
  if (!(r_turbine >= 0.0)) throw std::invalid_argument("turbine radius must be >= 0");
  if (!(r_spread > r_turbine)) {
    throw std::invalid_argument("wake spread must exceed turbine radius");
  }
  if (!(axial_induction > 0.0 && axial_induction < 0.5)) {
    throw std::invalid_argument("axial induction factor must lie in (0, 0.5)");
  }
}

double alpha_T(const WakeParams& params) {
  params.validate();
  return (params.r_spread - params.r_turbine) / params.x_max;
}

double reduced_speed(const WakeParams& params, double v, double delta) {
  if (delta < 0.0) throw std::invalid_argument("distance must be non-negative");
  const double ratio = delta / params.r_spread;
  const double denom = 1.0 + alpha_T(params) * ratio * ratio;
  return v * (1.0 - 2.0 * params.axial_induction / (denom * denom));
}

bool in_wake(int i, int j, const WindArrangement& wind, const WakeParams& params,
             const GridGeometry& geometry) {
  if (i == j) return false;
  const SiteCoord a = geometry.coords(i);
  const SiteCoord b = geometry.coords(j);
  // east / north components of the i -> j offset
  const double east = b.col - a.col;
  const double north = a.row - b.row;
  const double theta = wind.angle_deg * std::numbers::pi / 180.0;
  const double along_e = std::cos(theta);
  const double along_n = -std::sin(theta);
  const double t = east * along_e + north * along_n;
  const double s = std::abs(north * along_e - east * along_n);
  return t > kConeTolerance && t <= params.x_max + kConeTolerance &&
         s <= params.r_spread * t + kConeTolerance;
}

double power_ls(const Layout& layout, const WindRegime& regime, const WakeParams& params,
                const GridGeometry& geometry) {
  if (static_cast<int>(layout.size()) != geometry.sites()) {
    throw std::invalid_argument("layout size does not match grid");
  }
  const std::vector<int> on = layout.occupied_sites();
  double total = 0.0;
  for (const auto& d : regime.arrangements()) {
    const double v3 = cube(d.speed);
    for (int i : on) {
      double site = v3 / 3.0;
      for (int j : on) {
        if (!in_wake(i, j, d, params, geometry)) continue;
        const double u = reduced_speed(params, d.speed, geometry.distance(i, j));
        site -= (v3 - cube(u)) / 3.0;
      }
      total += d.probability * site;
    }
  }
  return total;
}

WindFarmModel wind_farm_from_json(const nlohmann::json& doc) {
  WindFarmModel model;
  if (doc.contains("l_grid")) model.geometry = GridGeometry(doc.at("l_grid").get<int>());
  if (doc.contains("arrangements")) {
    std::vector<WindArrangement> d;
    for (const auto& a : doc.at("arrangements")) {
      d.push_back({a.at("angle_deg").get<double>(), a.at("speed").get<double>(),
                   a.at("probability").get<double>()});
    }
    model.regime = WindRegime(std::move(d));
  }
  if (doc.contains("wake")) {
    const auto& w = doc.at("wake");
    model.wake.x_max = w.value("x_max", model.wake.x_max);
    model.wake.r_spread = w.value("r_spread", model.wake.r_spread);
    model.wake.r_turbine = w.value("r_turbine", model.wake.r_turbine);
    model.wake.axial_induction = w.value("axial_induction", model.wake.axial_induction);
  }
  model.wake.validate();
  return model;
}

nlohmann::json to_json(const WindFarmModel& model) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : model.regime.arrangements()) {
    arr.push_back({{"angle_deg", d.angle_deg}, {"speed", d.speed}, {"probability", d.probability}});
  }
  return {{"l_grid", model.geometry.side()},
          {"arrangements", arr},
          {"wake",
           {{"x_max", model.wake.x_max},
            {"r_spread", model.wake.r_spread},
            {"r_turbine", model.wake.r_turbine},
            {"axial_induction", model.wake.axial_induction}}}};
}

WakeInteractions::WakeInteractions(const WindFarmModel& model)
    : sites_(model.geometry.sites()),
      free_power_(model.regime.free_power()),
      deficit_(std::size_t(sites_) * sites_, 0.0) {
  model.wake.validate();
  for (int i = 0; i < sites_; ++i) {
    for (int j = 0; j < sites_; ++j) {
      if (i == j) continue;
      const double delta = model.geometry.distance(i, j);
      double sum = 0.0;
      for (const auto& d : model.regime.arrangements()) {
        if (!in_wake(i, j, d, model.wake, model.geometry)) continue;
        const double u = reduced_speed(model.wake, d.speed, delta);
        sum += d.probability * (cube(d.speed) - cube(u)) / 3.0;
      }
      deficit_[std::size_t(i) * sites_ + j] = sum;
    }
  }
}

}  // namespace wflo
