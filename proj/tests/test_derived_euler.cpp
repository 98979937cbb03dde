#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "toricstokes/derived_euler.hpp"
#include "toricstokes/errors.hpp"
#include "toricstokes/stokes.hpp"

using namespace toricstokes;

TEST_CASE("characters from weights") {
  auto c = RepCharacter::from_weights({0, 1, 2, 0, -1, 4});
  CHECK(c.multiplicities == std::array<int, 3>{2, 2, 2});
  CHECK(c.multiplicity(-2) == c.multiplicity(1));
  CHECK_FALSE(c.is_virtual);
  CHECK(RepCharacter::from_weights({}).multiplicities == std::array<int, 3>{0, 0, 0});
}

TEST_CASE("Hom characters of the Beilinson collection") {
  auto chars = beilinson_hom_characters();
  for (int i = 1; i <= 3; ++i)
    for (int l = i; l <= 3; ++l) {
      CAPTURE(i);
      CAPTURE(l);
      REQUIRE(chars.count({i, l}) == 1);
      CHECK(chars.at({i, l}) == RepCharacter::from_weights(oracles::oracle_beilinson_hom_weights(i, l)));
    }
  CHECK(chars.at({1, 1}).multiplicities == std::array<int, 3>{1, 0, 0});
}

TEST_CASE("equivariant Ext dimensions against the averaging oracle") {
  int checked = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 1; l <= 3; ++l)
        for (int m = 0; m < 3; ++m) {
          auto d = equivariant_ext_dims(i, j, l, m);
          CHECK(d[1] == 0);
          CHECK(d[2] == 0);
          CHECK(d[0] == oracles::oracle_equivariant_hom(i, j, l, m));
          ++checked;
        }
  CHECK(checked == 81);
  // Same object, same twist: only the identity.
  CHECK(equivariant_ext_dims(2, 1, 2, 1)[0] == 1);
  CHECK(equivariant_ext_dims(2, 1, 2, 2)[0] == 0);
  // Nothing goes backwards.
  CHECK(equivariant_ext_dims(3, 0, 1, 0)[0] == 0);
}

TEST_CASE("Euler matrix of the Y collection") {
  auto e = euler_matrix_y();
  REQUIRE(e.entries.size() == 9);
  CHECK(e.labels.front() == "E00");
  CHECK(e.labels.back() == "E22");
  CHECK(exceptionality_shape_check(e));
  CHECK(is_unipotent_upper(e.entries));
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      if (a / 3 == b / 3) CHECK(e.entries[a][b] == (a == b ? 1 : 0));
      if (a / 3 > b / 3) CHECK(e.entries[a][b] == 0);
    }
}

TEST_CASE("line bundle Euler matrices against Riemann-Roch") {
  auto p2fan = *registered_fan("P2");
  auto p2 = picard_data(p2fan);
  auto c = default_collection(p2fan, p2);
  auto e = euler_matrix_line_bundles(p2, c.classes, c.labels);
  CHECK(e.labels == std::vector<std::string>{"O", "O(1)", "O(2)"});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(e.entries[a][b] == oracles::oracle_rr_p2(a, b));

  auto qfan = *registered_fan("P1xP1");
  auto q = picard_data(qfan);
  auto cq = default_collection(qfan, q);
  auto eq = euler_matrix_line_bundles(q, cq.classes, cq.labels);
  const int a1[] = {0, 1, 0, 1}, a2[] = {0, 0, 1, 1};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(eq.entries[a][b] == oracles::oracle_rr_p1p1(a1[a], a2[a], a1[b], a2[b]));
  CHECK(exceptionality_shape_check(eq));

  auto ffan = *registered_fan("F1");
  auto f = picard_data(ffan);
  auto ef = euler_matrix_line_bundles(f, default_collection(ffan, f).classes);
  CHECK(ef.labels.size() == 4);
  CHECK(exceptionality_shape_check(ef));

  // chi(L, L) = 1 for any line bundle.
  auto one = euler_matrix_line_bundles(p2, {{5}, {5}});
  CHECK(one.entries[0][1] == 1);
  CHECK_FALSE(exceptionality_shape_check(one));

  auto y = *registered_fan("Y-bl6");
  CHECK_THROWS_AS(default_collection(y, picard_data(y)), Error);
}
