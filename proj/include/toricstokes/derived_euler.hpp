#pragma once

// Euler matrices of exceptional collections: the Z/3-equivariant Beilinson
// collection on the blow-up of P^2 at six points, and line bundles on toric
// surfaces via Riemann-Roch.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toricstokes/lattice_toric.hpp"

namespace toricstokes {

struct RepCharacter {
  std::array<int, 3> multiplicities{};  // of rho_0, rho_1, rho_2
  bool is_virtual = false;

  static RepCharacter from_weights(const std::vector<int>& weights);
  int multiplicity(int j) const { return multiplicities[((j % 3) + 3) % 3]; }
  friend bool operator==(const RepCharacter&, const RepCharacter&) = default;
};

/// Hom(E_i, E_l) for 1 <= i <= l <= 3 on P^2 with the weights of V = (1, 2, 0).
std::map<std::pair<int, int>, RepCharacter> beilinson_hom_characters();

/// dim (Ext^k(E_i, E_l) (x) rho_j^dual (x) rho_m)^{Z/3} for k = 0, 1, 2.
/// i, l in {1, 2, 3}; j, m in {0, 1, 2}.
std::array<int, 3> equivariant_ext_dims(int i, int j, int l, int m);

struct EulerMatrix {
  IntMatrix entries;
  std::vector<std::string> labels;
};

/// Objects E_ij, i the Beilinson index minus one, ordered E00, E01, ..., E22.
EulerMatrix euler_matrix_y();

/// chi(O(A), O(B)) = 1 + (B - A).((B - A) - K) / 2, classes in the T basis.
EulerMatrix euler_matrix_line_bundles(const PicardData& pd, const std::vector<std::vector<std::int64_t>>& classes,
                                      const std::vector<std::string>& labels = {});

bool exceptionality_shape_check(const EulerMatrix& e);

struct LineBundleCollection {
  std::vector<std::vector<std::int64_t>> classes;
  std::vector<std::string> labels;
};

/// Standard full exceptional collections of line bundles: P^2 (O, O(1),
/// O(2)); P^1 x P^1 (O, O(1,0), O(0,1), O(1,1)); F_1 (O, O(F), O(H), O(H+F)).
/// Throws UnknownSurface otherwise.
LineBundleCollection default_collection(const Fan& fan, const PicardData& pd);

}  // namespace toricstokes
