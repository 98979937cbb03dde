#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "toricstokes/cohomology.hpp"
#include "toricstokes/errors.hpp"
#include "toricstokes/lattice_toric.hpp"

using namespace toricstokes;

namespace {

Fan fan_of(std::vector<LatticeVector> rays) { return parse_fan(rays); }

ErrorCode code_of(std::vector<LatticeVector> rays) {
  try {
    parse_fan(rays);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

const std::vector<LatticeVector> kY{{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {-1, 1}, {1, -1}, {-1, 2}, {2, -1}};

}  // namespace

TEST_CASE("parse_fan accepts the nine rays of Y and sorts them") {
  auto f = fan_of(kY);
  CHECK(f.size() == 9);
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(det(f.rays[k], f.rays[(k + 1) % f.size()]) == 1);
  // Labels still point at the caller's positions.
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(f.rays[k] == kY[f.labels[k] - 1]);
}

TEST_CASE("parse_fan rejects malformed fans") {
  CHECK(fan_of({{1, 0}, {0, 1}, {-1, -1}}).size() == 3);
  CHECK(code_of({{2, 0}, {0, 1}, {-1, -1}}) == ErrorCode::NonPrimitiveRay);
  CHECK(code_of({{1, 0}, {1, 2}, {-1, -1}}) == ErrorCode::NotSmooth);
  CHECK(code_of({{1, 0}, {0, 1}}) == ErrorCode::TooFewRays);
  CHECK(code_of({{1, 0}, {0, 1}, {-1, 1}}) == ErrorCode::NotComplete);
}

TEST_CASE("fan text format round-trips") {
  auto f = *registered_fan("Y-bl6");
  auto g = parse_fan_text(format_fan_text(f));
  CHECK(g.rays == f.rays);
  CHECK(g.name == f.name);
  CHECK_THROWS_AS(parse_fan_text("rays = (1,0) (0,1) (-1,x)"), Error);
}

TEST_CASE("picard data of P2, P1xP1 and Y") {
  auto p2 = picard_data(*registered_fan("P2"));
  CHECK(p2.picard_rank == 1);
  CHECK(p2.m_matrix == IntMatrix{{1}, {1}, {1}});
  CHECK(p2.r_degrees == std::vector<std::int64_t>{3});

  auto q = picard_data(*registered_fan("P1xP1"));
  CHECK(q.picard_rank == 2);
  CHECK(q.r_degrees == std::vector<std::int64_t>{2, 2});

  auto y = picard_data(*registered_fan("Y-bl6"));
  CHECK(y.picard_rank == 7);
  CHECK(y.cohomology_rank == 9);
}

TEST_CASE("w_k span the cokernel and sum to c1; the form is hyperbolic") {
  for (const auto& name : registered_fan_names()) {
    CAPTURE(name);
    auto fan = *registered_fan(name);
    auto pd = picard_data(fan);
    const int rho = pd.picard_rank;
    // sum_k m(v_k) w_k = 0 for m = e1, e2.
    for (int a = 0; a < rho; ++a) {
      std::int64_t sx = 0, sy = 0, c1 = 0;
      for (std::size_t k = 0; k < fan.size(); ++k) {
        sx += fan.rays[k].x * pd.m_matrix[k][a];
        sy += fan.rays[k].y * pd.m_matrix[k][a];
        c1 += pd.m_matrix[k][a];
      }
      CHECK(sx == 0);
      CHECK(sy == 0);
      CHECK(c1 == pd.r_degrees[a]);
    }
    Eigen::MatrixXd q(rho, rho);
    for (int i = 0; i < rho; ++i)
      for (int j = 0; j < rho; ++j) q(i, j) = static_cast<double>(pd.intersection_form[i][j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    int pos = 0, neg = 0;
    for (int i = 0; i < rho; ++i) (es.eigenvalues()[i] > 0 ? pos : neg) += 1;
    CHECK(pos == 1);
    CHECK(neg == rho - 1);
  }
}

TEST_CASE("nef anticanonical class") {
  CHECK(is_nef_anticanonical(*registered_fan("P2")));
  CHECK(is_nef_anticanonical(*registered_fan("Y-bl6")));
  // F2: the (-2)-curve is anticanonically trivial, so -K is still nef.
  CHECK(is_nef_anticanonical(fan_of({{1, 0}, {0, 1}, {-1, -2}, {0, -1}})));
  CHECK_FALSE(is_nef_anticanonical(fan_of({{1, 0}, {0, 1}, {-1, -3}, {0, -1}})));
}

TEST_CASE("Kouchnirenko count") {
  CHECK(kouchnirenko_count(*registered_fan("P2")) == 3);
  CHECK(kouchnirenko_count(*registered_fan("Y-bl6")) == 9);
  CHECK(kouchnirenko_count(*registered_fan("P1xP1")) == 4);
}

TEST_CASE("cohomology ring products") {
  auto p2 = picard_data(*registered_fan("P2"));
  auto h = RationalClass::basis(1, 0);
  CHECK(ring_multiply(RationalClass::unit(1), h, p2) == h);
  CHECK(ring_multiply(h, h, p2) == RationalClass::point(1));

  auto fan = *registered_fan("Y-bl6");
  auto y = picard_data(fan);
  auto self = boundary_self_intersections(fan);
  int minus_one = 0;
  for (std::size_t k = 0; k < fan.size(); ++k) {
    auto d = divisor_class(y, static_cast<int>(k));
    CHECK(ring_multiply(d, d, y).deg4 == mpq_class(static_cast<long>(self[k])));
    if (self[k] == -1) {
      ++minus_one;
      CHECK(ring_multiply(d, d, y) == RationalClass::point(7) * mpq_class(-1));
    }
  }
  CHECK(minus_one > 0);
}
