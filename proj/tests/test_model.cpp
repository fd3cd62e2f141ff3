// Grid, wake model, QUBO and Pauli-Hamiltonian construction.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "wflo/grid.hpp"
#include "wflo/pauli.hpp"
#include "wflo/qubo.hpp"
#include "wflo/rng.hpp"
#include "wflo/wake_model.hpp"

using namespace wflo;

namespace {

WindFarmModel model_for(int l) {
  WindFarmModel m;
  m.geometry = GridGeometry(l);
  return m;
}

QuboProblem random_qubo(int q, Rng& rng) {
  QuboProblem p(q);
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j) p.set(i, j, 20.0 * uniform01(rng) - 10.0);
  return p;
}

}  // namespace

TEST_CASE("site numbering runs row-major from the north-west corner") {
  GridGeometry g(4);
  CHECK(site_coords(g, 1) == SiteCoord{1, 1});
  CHECK(site_coords(g, 15) == SiteCoord{4, 3});
  CHECK(site_coords(g, 16) == SiteCoord{4, 4});
  CHECK_THROWS_AS(site_coords(g, 0), std::out_of_range);
  CHECK_THROWS_AS(site_coords(g, 17), std::out_of_range);
  for (int i = 0; i < g.sites(); ++i) CHECK(g.index_of(g.coords(i)) == i);
  CHECK(g.distance(0, 5) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("layout strings and labels put site 1 first") {
  const Layout x = Layout::from_string("1000000000000001");
  CHECK(x.label() == ((1ULL << 15) | 1ULL));
  CHECK(Layout::from_label(x.label(), 16) == x);
  CHECK(x.to_string() == "1000000000000001");
  CHECK(x.count() == 2);
  CHECK(x.occupied_sites() == std::vector<int>{0, 15});
  CHECK_THROWS(Layout::from_string("10a1"));

  // four quarter turns are the identity
  GridGeometry g(4);
  Layout y = Layout::from_string("1100000000000010");
  Layout r = y;
  for (int k = 0; k < 4; ++k) r = r.rotated90(g);
  CHECK(r == y);
  CHECK(Layout::from_string("1000000000000000").rotated90(g) == Layout::from_string("0001000000000000"));
}

TEST_CASE("default wind regime") {
  const WindRegime d = mosetti_regime_2();
  REQUIRE(d.size() == 36);
  CHECK(d.arrangements().front().angle_deg == 0.0);
  CHECK(d.arrangements().front().speed == 12.0);
  CHECK(d.arrangements().front().probability == doctest::Approx(1.0 / 36).epsilon(1e-15));
  CHECK(d.arrangements().back().angle_deg == 350.0);
  double total = 0.0;
  for (const auto& a : d.arrangements()) total += a.probability;
  CHECK(std::abs(total - 1.0) < 1e-12);
  CHECK(d.free_power() == doctest::Approx(576.0).epsilon(1e-14));

  CHECK_THROWS_AS(WindRegime({{0, 12, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(WindRegime({{0, 12, 1.5}, {90, 12, -0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(WindRegime({{0, 0, 1.0}}), std::invalid_argument);
}

TEST_CASE("wake expansion and reduced speed") {
  WakeParams p;
  CHECK(alpha_T(p) == doctest::Approx(1.17).epsilon(1e-14));
  WakeParams p2;
  p2.x_max = 2.0;
  CHECK(alpha_T(p2) == doctest::Approx(0.585).epsilon(1e-14));
  WakeParams bad;
  bad.r_spread = 1.0;
  bad.r_turbine = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK(reduced_speed(p, 12.0, 0.0) == doctest::Approx(9.6).epsilon(1e-14));
  // 12 (1 - 0.2 / (1 + 1.17 / 2.25)^2), worked by hand
  const double hand = 12.0 * (1.0 - 0.2 / std::pow(1.0 + 1.17 * (1.0 / 1.5) * (1.0 / 1.5), 2));
  CHECK(reduced_speed(p, 12.0, 1.0) == doctest::Approx(hand).epsilon(1e-14));
  CHECK(std::abs(reduced_speed(p, 12.0, 1.0) - 10.96121) < 1e-5);
  CHECK(reduced_speed(p, 12.0, 1e6) == doctest::Approx(12.0).epsilon(1e-9));
}

TEST_CASE("wake membership") {
  GridGeometry g(4);
  WakeParams p;
  const WindArrangement west{0.0, 12.0, 1.0};
  const int a = g.index_of({1, 1});
  CHECK_FALSE(in_wake(a, a, west, p, g));
  CHECK(in_wake(a, g.index_of({1, 2}), west, p, g));
  CHECK_FALSE(in_wake(a, g.index_of({1, 3}), west, p, g));
  CHECK(in_wake(a, g.index_of({2, 2}), west, p, g));
  // nothing is upwind
  CHECK_FALSE(in_wake(g.index_of({1, 2}), a, west, p, g));
  // a northerly carries the wake south
  const WindArrangement north{90.0, 12.0, 1.0};
  CHECK(in_wake(a, g.index_of({2, 1}), north, p, g));
  CHECK_FALSE(in_wake(a, g.index_of({1, 2}), north, p, g));
}

TEST_CASE("power of simple layouts") {
  const WindFarmModel m = model_for(4);
  CHECK(power_ls(Layout(16), m.regime, m.wake, m.geometry) == 0.0);
  for (int i = 0; i < 16; ++i) {
    Layout x(16);
    x.set(std::size_t(i), true);
    CHECK(power_ls(x, m.regime, m.wake, m.geometry) == doctest::Approx(576.0).epsilon(1e-14));
  }
  for (const Layout& x : fixtures::optimal_lgrid4()) {
    CHECK(power_ls(x, m.regime, m.wake, m.geometry) == doctest::Approx(2304.0).epsilon(1e-12));
    CHECK(objective_f(x, m) == doctest::Approx(2304.0).epsilon(1e-12));
  }
}

TEST_CASE("power is invariant under quarter turns of the isotropic regime") {
  const WindFarmModel m = model_for(4);
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Layout x = Layout::from_label(rng() & 0xffff, 16);
    const double p = power_ls(x, m.regime, m.wake, m.geometry);
    CHECK(power_ls(x.rotated90(m.geometry), m.regime, m.wake, m.geometry) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("quadratic objective equals the wake-by-wake power at l_grid 3") {
  const WindFarmModel m = model_for(3);
  const WakeInteractions w(m);
  for (std::uint64_t label = 0; label < 512; ++label) {
    const Layout x = Layout::from_label(label, 9);
    CHECK(std::abs(objective_f(x, w) - power_ls(x, m.regime, m.wake, m.geometry)) < 1e-9);
  }
}

TEST_CASE("penalty") {
  GridGeometry g(4);
  Layout four = Layout::from_string("1111000000000000");
  Layout five = Layout::from_string("1111100000000000");
  CHECK(penalty_g(four, 1000, 0, 4, 0, g) == 0.0);
  CHECK(penalty_g(five, 1000, 0, 4, 0, g) == 1000.0);
  CHECK(penalty_g(Layout(16), 1000, 0, 4, 0, g) == 16000.0);
  // adjacent pairs inside xi = 1.5: (1,2), (2,3), (3,4)
  CHECK(penalty_g(four, 0, 7, 4, 1.5, g) == 21.0);
}

TEST_CASE("QUBO weights") {
  const WindFarmModel m = model_for(4);
  const QuboProblem q = build_q(m, 1000.0, 4);
  CHECK(q.size() == 16);
  CHECK(q.constant_offset == 16000.0);
  int nonzero = 0;
  for (int i = 0; i < 16; ++i) {
    CHECK(q.at(i, i) == doctest::Approx(-7576.0).epsilon(1e-14));
    for (int j = i; j < 16; ++j) nonzero += q.at(i, j) != 0.0;
  }
  // fully dense upper triangle: 16 diagonal + 120 couplings, each coupling
  // standing for both (i,j) and (j,i)
  CHECK(nonzero == 136);

  // a pair that no wind direction couples carries the bare penalty
  const WakeInteractions w(m);
  const GridGeometry& g = m.geometry;
  const int i = g.index_of({1, 1}), j = g.index_of({1, 3});
  REQUIRE(w.deficit(i, j) == 0.0);
  REQUIRE(w.deficit(j, i) == 0.0);
  CHECK(q.at(i, j) == 2000.0);

  QuboProblem one(1);
  one.set(0, 0, -3.0);
  CHECK(evaluate_qubo(one, Layout::from_string("1")) == -3.0);
  CHECK(evaluate_qubo(q, Layout(16)) == 0.0);
}

TEST_CASE("QUBO energy decomposes into power and penalty") {
  for (int l : {2, 3}) {
    const WindFarmModel m = model_for(l);
    const QuboProblem q = build_q(m, 1000.0, 4);
    const int n = l * l;
    for (std::uint64_t label = 0; label < (1ULL << n); ++label) {
      const Layout x = Layout::from_label(label, n);
      const double lhs = evaluate_qubo(q, x) + q.constant_offset;
      const double rhs = -objective_f(x, m) + penalty_g(x, 1000.0, 0.0, 4, 0.0, m.geometry);
      CHECK(std::abs(lhs - rhs) < 1e-9);
      CHECK(evaluate_qubo(q, label) == evaluate_qubo(q, x));
    }
  }
}

TEST_CASE("feasibility") {
  GridGeometry g(4);
  CHECK_FALSE(is_feasible(Layout(16), 4, 0, g));
  CHECK(is_feasible(Layout::from_string("1001000000001001"), 4, 0, g));
  CHECK_FALSE(is_feasible(Layout::from_string("1100000000001001"), 4, 1.5, g));
  CHECK(is_feasible(Layout::from_string("1010000000000101"), 4, 1.5, g));
}

TEST_CASE("QUBO JSON round trip") {
  const QuboProblem q = build_q(model_for(3), 1000.0, 4);
  const QuboProblem r = qubo_from_json(to_json(q));
  REQUIRE(r.size() == q.size());
  for (int i = 0; i < q.size(); ++i)
    for (int j = i; j < q.size(); ++j) CHECK(r.at(i, j) == q.at(i, j));
  CHECK(r.constant_offset == q.constant_offset);
  CHECK(r.m == 4);
  CHECK(r.lambda1 == 1000.0);
}

TEST_CASE("wind farm JSON round trip") {
  const WindFarmModel m = model_for(3);
  const WindFarmModel r = wind_farm_from_json(to_json(m));
  CHECK(r.geometry.side() == 3);
  CHECK(r.regime.size() == 36);
  CHECK(r.wake.r_turbine == 0.33);
}

TEST_CASE("hand-expanded Hamiltonians") {
  QuboProblem a(1);
  a.set(0, 0, 2.0);
  const auto ha = qubo_to_hamiltonian(a);
  REQUIRE(ha.terms().size() == 2);
  CHECK(ha.terms()[0] == PauliTerm{1.0, 0});
  CHECK(ha.terms()[1] == PauliTerm{-1.0, 1});
  CHECK(basis_energy(ha, 0) == 0.0);
  CHECK(basis_energy(ha, 1) == 2.0);

  QuboProblem b(2);
  b.set(0, 1, 4.0);
  const auto hb = qubo_to_hamiltonian(b);
  REQUIRE(hb.terms().size() == 4);
  CHECK(hb.terms()[0] == PauliTerm{1.0, 0b00});
  CHECK(hb.terms()[1] == PauliTerm{-1.0, 0b10});  // site 1 is the high bit
  CHECK(hb.terms()[2] == PauliTerm{-1.0, 0b01});
  CHECK(hb.terms()[3] == PauliTerm{1.0, 0b11});
  CHECK(basis_energy(hb, 0b11) == 4.0);
  CHECK(basis_energy(hb, 0b10) == 0.0);

  const auto hz = qubo_to_hamiltonian(QuboProblem(3));
  for (std::uint64_t label = 0; label < 8; ++label) CHECK(basis_energy(hz, label) == 0.0);
  CHECK(qubo_to_hamiltonian_unpruned(QuboProblem(3)).terms().size() == 1 + 3 + 3);

  const DiagonalHamiltonian id(2, {{2.5, 0}});
  for (std::uint64_t label = 0; label < 4; ++label) CHECK(basis_energy(id, label) == 2.5);
  const DiagonalHamiltonian z(1, {{1.0, 1}});
  CHECK(basis_energy(z, 0) == 1.0);
  CHECK(basis_energy(z, 1) == -1.0);
}

TEST_CASE("Hamiltonian diagonal reproduces the QUBO on random problems") {
  Rng rng(2024);
  for (int t = 0; t < 40; ++t) {
    const int q = 1 + int(rng() % 10);
    const QuboProblem p = random_qubo(q, rng);
    const auto h = qubo_to_hamiltonian(p);
    const auto diag = diagonal_energies(h);
    REQUIRE(diag.size() == (std::size_t{1} << q));
    for (std::uint64_t label = 0; label < diag.size(); ++label) {
      const double e = evaluate_qubo(p, label);
      CHECK(std::abs(basis_energy(h, label) - e) < 1e-9);
      CHECK(std::abs(diag[label] - e) < 1e-9);
    }
  }
}

TEST_CASE("split seeds are distinct and order free") {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 0; i < 1000; ++i) s.push_back(split_seed(42, i));
  std::sort(s.begin(), s.end());
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  CHECK(split_seed(42, 7) == split_seed(42, 7));
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(r);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
