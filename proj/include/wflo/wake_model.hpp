#ifndef WFLO_WAKE_MODEL_HPP_
#define WFLO_WAKE_MODEL_HPP_

#include <vector>

#include <json.hpp>

#include "wflo/grid.hpp"

namespace wflo {

// One wind condition. `angle_deg` is the direction the wind comes FROM,
// measured clockwise from west: 0 = westerly (blows east), 90 = northerly
// (blows south).
struct WindArrangement {
  double angle_deg = 0.0;
  double speed = 0.0;        // free-stream speed, m/s
  double probability = 0.0;  // occurrence weight
};

// Probability-weighted set of wind arrangements. Construction rejects
// negative probabilities, non-positive speeds and weights that do not sum
// to one within 1e-12.
class WindRegime {
 public:
  explicit WindRegime(std::vector<WindArrangement> arrangements);

  const std::vector<WindArrangement>& arrangements() const { return arrangements_; }
  std::size_t size() const { return arrangements_.size(); }

  // sum_d p_d v_d^3 / 3: undisturbed power of one turbine.
  double free_power() const;

 private:
  std::vector<WindArrangement> arrangements_;
};

// 36 directions 0, 10, ..., 350 degrees at 12 m/s, each with weight 1/36.
WindRegime mosetti_regime_2();

struct WakeParams {
  double x_max = 1.0;            // wake length, grid boxes
  double r_spread = 1.5;         // lateral spread per unit downstream distance
  double r_turbine = 0.33;       // rotor radius, grid boxes
  double axial_induction = 0.1;  // a

  // Throws std::invalid_argument unless x_max > 0, r_spread > r_turbine >= 0
  // and 0 < a < 0.5.
  void validate() const;
};

// Wake expansion coefficient (r - r_t) / x.
double alpha_T(const WakeParams& params);

// Jensen-type reduced speed at centre distance `delta` behind a turbine:
// v (1 - 2a / (1 + alpha_T (delta / r)^2)^2).
double reduced_speed(const WakeParams& params, double v, double delta);

// True iff the centre of site j lies in the wake cone of a turbine at site
// i (0-based indices). With t the downstream and s the lateral offset of j
// relative to i, the cone is 0 < t <= x_max, s <= r_spread * t. Both bounds
// are inclusive to within 1e-9 so that lattice points sitting exactly on
// the cone boundary count as waked.
bool in_wake(int i, int j, const WindArrangement& wind, const WakeParams& params,
             const GridGeometry& geometry);

// Total expected power of a layout under linear wake superposition.
double power_ls(const Layout& layout, const WindRegime& regime, const WakeParams& params,
                const GridGeometry& geometry);

// Everything needed to score a layout.
struct WindFarmModel {
  GridGeometry geometry{4};
  WindRegime regime = mosetti_regime_2();
  WakeParams wake{};
};

// Reads {"arrangements": [...], "wake": {...}, "l_grid": n}. Missing keys
// fall back to the Mosetti case-2 defaults.
WindFarmModel wind_farm_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const WindFarmModel& model);

// Precomputed site powers and pairwise deficits for a model:
//   deficit(i, j) = sum_d p_d [j in w_i(d)] (v_d^3 - u_ij^3) / 3.
// Used to evaluate the quadratic objective without re-deriving geometry.
class WakeInteractions {
 public:
  explicit WakeInteractions(const WindFarmModel& model);

  int sites() const { return sites_; }
  double free_power() const { return free_power_; }
  double deficit(int i, int j) const { return deficit_[std::size_t(i) * sites_ + j]; }

 private:
  int sites_;
  double free_power_;
  std::vector<double> deficit_;
};

}  // namespace wflo

#endif  // WFLO_WAKE_MODEL_HPP_
