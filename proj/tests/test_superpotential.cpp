#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "toricstokes/errors.hpp"
#include "toricstokes/pipeline.hpp"
#include "toricstokes/superpotential.hpp"

using namespace toricstokes;

namespace {

const cplx w3 = std::polar(1.0, 2 * std::numbers::pi / 3);

LaurentPolynomial y_mirror() { return pipeline_superpotential(*registered_fan("Y-bl6")); }
LaurentPolynomial p2_mirror() { return build_w(*registered_fan("P2"), std::nullopt); }

std::vector<cplx> values_of(const std::vector<CriticalPoint>& cps) {
  std::vector<cplx> v;
  for (const auto& c : cps) v.push_back(c.value);
  return v;
}

}  // namespace

TEST_CASE("build_w") {
  auto y = y_mirror();
  CHECK(y.terms.size() == 3);
  CHECK(y.terms.at({2, -1}) == cplx(1.0));
  CHECK(y.terms.at({-1, 2}) == cplx(1.0));
  CHECK(y.terms.at({-1, -1}) == cplx(1.0));

  auto p = p2_mirror();
  CHECK(p.terms.size() == 3);
  CHECK(p.terms.count({1, 0}) == 1);
  CHECK(p.terms.count({0, 1}) == 1);
  CHECK(p.terms.count({-1, -1}) == 1);

  auto c = build_w(*registered_fan("P2"), std::map<int, cplx>{}, 2.5);
  CHECK(c.terms.size() == 1);
  CHECK(c(cplx(0.3, 1.0), cplx(2.0, -1.0)) == cplx(2.5));
  CHECK_THROWS_AS(build_w(*registered_fan("P2"), std::map<int, cplx>{{7, 1.0}}), Error);
}

TEST_CASE("critical points of the Y mirror are the nine p_ij") {
  auto cps = critical_points(y_mirror());
  REQUIRE(cps.size() == 9);
  std::vector<bool> used(9, false);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto [x, y] = oracles::oracle_y_critical(i, j);
      int hits = 0;
      for (std::size_t k = 0; k < cps.size(); ++k)
        if (std::abs(cps[k].x - x) < 1e-10 && std::abs(cps[k].y - y) < 1e-10) {
          ++hits;
          used[k] = true;
          CHECK(std::abs(cps[k].value - 3.0 * std::pow(w3, 1 - i)) < 1e-10);
        }
      CHECK(hits == 1);
    }
  for (int k = 0; k < 3; ++k) {
    int mult = 0;
    for (const auto& c : cps) mult += std::abs(c.value - 3.0 * std::pow(w3, k)) < 1e-10;
    CHECK(mult == 3);
  }
}

TEST_CASE("critical points of the P2 mirror against the closed form") {
  auto cps = critical_points(p2_mirror());
  REQUIRE(cps.size() == 3);
  for (int k = 0; k < 3; ++k) {
    auto o = oracles::oracle_p2_critical(k);
    int hits = 0;
    for (const auto& c : cps)
      if (std::abs(c.x - o.x) < 1e-10 && std::abs(c.y - o.y) < 1e-10) {
        ++hits;
        CHECK(std::abs(c.value - o.value) < 1e-10);
        CHECK(std::abs(c.hessian_det - o.hessian_det) < 1e-9);
      }
    CHECK(hits == 1);
  }
  // Closed under rotation by w.
  for (const auto& c : cps) {
    bool found = false;
    for (const auto& d : cps) found = found || std::abs(d.value - w3 * c.value) < 1e-10;
    CHECK(found);
  }
}

TEST_CASE("labels are canonical and reproducible") {
  auto a = critical_points(y_mirror());
  SolverConfig cfg;
  cfg.homotopy.threads = 1;
  auto b = critical_points(y_mirror(), cfg);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].label == static_cast<int>(k));
    CHECK(a[k].x == b[k].x);
    CHECK(a[k].y == b[k].y);
  }
}

TEST_CASE("stationary phase leading term") {
  auto cps = critical_points(p2_mirror());
  const CriticalPoint* one = nullptr;
  for (const auto& c : cps)
    if (std::abs(c.x - 1.0) < 1e-9) one = &c;
  REQUIRE(one != nullptr);
  auto t = saddle_leading_term(*one, 1.0);
  CHECK(std::abs(t) == doctest::Approx(std::exp(3.0) / (std::numbers::pi * std::sqrt(3.0))).epsilon(1e-10));

  // Dominant exponential along a ray.
  for (double h : {1e-2, 5e-3}) {
    auto s = saddle_leading_term(*one, cplx(h, 0.0));
    CHECK(std::log(std::abs(s)) * h == doctest::Approx(3.0).epsilon(0.05));
  }

  // Conjugate points with conjugate hbar.
  for (const auto& c : cps)
    for (const auto& d : cps)
      if (std::abs(d.x - std::conj(c.x)) < 1e-9 && std::abs(d.y - std::conj(c.y)) < 1e-9) {
        const cplx h(0.7, 0.4);
        auto a = saddle_leading_term(c, h), b = saddle_leading_term(d, std::conj(h));
        CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-9 * std::abs(a));
        // The square-root branch may flip the sign.
        CHECK(std::min(std::abs(a - std::conj(b)), std::abs(a + std::conj(b))) < 1e-9 * std::abs(a));
      }
}

TEST_CASE("admissibility") {
  const std::vector<cplx> y{3.0, 3.0 * w3, 3.0 * w3 * w3};
  CHECK(admissible_check(y, std::numbers::pi / 2));
  CHECK_FALSE(admissible_check({0.0, 1.0}, std::numbers::pi / 2));
  for (double phi : {0.0, 0.4, std::numbers::pi / 2, 2.0}) CHECK(admissible_check({cplx(1, 1), cplx(1, 1)}, phi));

  const std::vector<cplx> q{-4.0, 0.0, 0.0, 4.0};
  const double phi = choose_admissible_phi(q);
  CHECK(phi != doctest::Approx(std::numbers::pi / 2));
  CHECK(admissible_check(q, phi));
  CHECK(admissibility_margin(q, phi) >= 2.5 * std::numbers::pi / 180 - 1e-12);
}

TEST_CASE("distinguished ordering against the geometric oracle") {
  const std::vector<cplx> vals{3.0, 3.0 * w3, 3.0 * w3 * w3};
  auto o = distinguished_ordering(vals, cplx(-50.0, 0.0), std::numbers::pi / 2);
  CHECK(o.ordering == std::vector<int>{1, 0, 2});  // 3w, 3, 3w^2
  CHECK(o.ordering == oracles::oracle_above_order(vals, cplx(-50.0, 0.0), std::numbers::pi / 2));

  auto cps = critical_points(y_mirror());
  auto values = values_of(cps);
  auto y = distinguished_ordering(values, 0.0, std::numbers::pi / 2);
  CHECK(y.ordering == oracles::oracle_above_order(values, 0.0, std::numbers::pi / 2));
  REQUIRE(y.clusters.size() == 3);
  CHECK(std::abs(values[y.clusters[0][0]] - 3.0 * w3) < 1e-10);
  CHECK(std::abs(values[y.clusters[1][0]] - 3.0) < 1e-10);
  CHECK(std::abs(values[y.clusters[2][0]] - 3.0 * w3 * w3) < 1e-10);

  // Random configurations and base points.
  for (int seed = 0; seed < 20; ++seed) {
    std::vector<cplx> v;
    for (int k = 0; k < 5; ++k) v.push_back(std::polar(1.0 + k + 0.1 * seed, 1.3 * k + 0.7 * seed));
    const double phi = choose_admissible_phi(v);
    const cplx b = choose_base_point(v, phi);
    CHECK(distinguished_ordering(v, b, phi).ordering == oracles::oracle_above_order(v, b, phi));
  }

  auto single = distinguished_ordering({cplx(1, 2)}, 0.0, std::numbers::pi / 2);
  CHECK(single.ordering == std::vector<int>{0});
  CHECK_THROWS_AS(distinguished_ordering(vals, 3.0, std::numbers::pi / 2), Error);
}
