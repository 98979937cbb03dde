#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "toricstokes/errors.hpp"
#include "toricstokes/stokes.hpp"

using namespace toricstokes;

namespace {

const IntMatrix kP2Euler{{1, 3, 6}, {0, 1, 3}, {0, 0, 1}};

double sym_det(const IntMatrix& s) {
  const int n = static_cast<int>(s.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = static_cast<double>(s[i][j] + s[j][i]);
  return m.determinant();
}

}  // namespace

TEST_CASE("Stokes matrix from intersection numbers") {
  IntersectionMatrix one{{{0}}, {0}};
  CHECK(stokes_from_intersections(one).entries == IntMatrix{{1}});

  IntersectionMatrix m{{{0, 3, -3}, {-3, 0, 3}, {3, -3, 0}}, {2, 0, 1}};
  auto s = stokes_from_intersections(m);
  CHECK(s.entries == IntMatrix{{1, -3, 3}, {0, 1, -3}, {0, 0, 1}});
  CHECK(s.labels == std::vector<int>{2, 0, 1});
  CHECK(is_unipotent_upper(s.entries));
  CHECK_FALSE(is_unipotent_upper(IntMatrix{{1, 0}, {1, 1}}));
}

TEST_CASE("comparison up to signs") {
  auto same = compare_up_to_signs(kP2Euler, kP2Euler);
  CHECK(same.matched);
  CHECK(same.sign_vector == std::vector<int>{1, 1, 1});
  CHECK(same.cluster_permutation == std::vector<int>{0, 1, 2});
  CHECK(same.braid_word.empty());

  IntMatrix flipped{{1, -3, 6}, {0, 1, -3}, {0, 0, 1}};
  auto f = compare_up_to_signs(flipped, kP2Euler);
  CHECK(f.matched);
  CHECK(apply_certificate(flipped, f) == kP2Euler);

  IntMatrix altered = kP2Euler;
  altered[0][2] += 1;
  CHECK_FALSE(compare_up_to_signs(altered, kP2Euler).matched);

  // Parity obstruction: an odd number of sign flips around a triangle.
  IntMatrix odd{{1, -3, 6}, {0, 1, 3}, {0, 0, 1}};
  CHECK_FALSE(compare_up_to_signs(odd, kP2Euler).matched);
}

TEST_CASE("cluster relabelling") {
  // Positions 1 and 2 share a critical value; E lists them the other way.
  IntMatrix e{{1, 2, 2, 4}, {0, 1, 0, 2}, {0, 0, 1, 3}, {0, 0, 0, 1}};
  IntMatrix s{{1, -2, 2, 4}, {0, 1, 0, -3}, {0, 0, 1, 2}, {0, 0, 0, 1}};
  CHECK_FALSE(compare_up_to_signs(s, e).matched);
  auto c = compare_up_to_signs(s, e, {{0}, {1, 2}, {3}});
  REQUIRE(c.matched);
  CHECK(c.cluster_permutation == std::vector<int>{0, 2, 1, 3});
  CHECK(apply_certificate(s, c) == e);
}

TEST_CASE("braid mutations") {
  StokesMatrix s{{{1, 3, -3}, {0, 1, -3}, {0, 0, 1}}, {1, 2, 0}};
  for (int p : {1, 2}) {
    auto m = braid_mutation(s, p);
    CHECK(is_unipotent_upper(m.entries));
    CHECK(sym_det(m.entries) == doctest::Approx(sym_det(s.entries)));
    CHECK(inverse_braid_mutation(m, p).entries == s.entries);
    CHECK(braid_mutation(inverse_braid_mutation(s, p), p).entries == s.entries);
  }
  CHECK(braid_mutation(s, 1).labels == std::vector<int>{2, 1, 0});
  CHECK_THROWS_AS(braid_mutation(s, 0), Error);
  CHECK_THROWS_AS(braid_mutation(s, 3), Error);

  // A straight-path P2 matrix needs one move to reach (O, O(1), O(2)).
  CHECK_FALSE(compare_up_to_signs(s.entries, kP2Euler).matched);
  auto c = compare_up_to_signs(s.entries, kP2Euler, {}, 2);
  REQUIRE(c.matched);
  CHECK(c.braid_word.size() == 1);
  CHECK(apply_certificate(s.entries, c) == kP2Euler);
  CHECK(braid_word_string(c.braid_word) == "s1");
  CHECK(braid_word_string({}) == "identity");
  CHECK(braid_word_string({{2, true}, {1, false}}) == "s2^-1 s1");
  CHECK(parse_braid_word("s2^-1 s1") == std::vector<BraidMove>{{2, true}, {1, false}});
  CHECK(parse_braid_word("identity").empty());
  CHECK_THROWS_AS(parse_braid_word("t1"), Error);
}
