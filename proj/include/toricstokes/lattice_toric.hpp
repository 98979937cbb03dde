#pragma once

// Exact lattice data of a smooth complete toric surface.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toricstokes {

struct LatticeVector {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

std::int64_t det(const LatticeVector& a, const LatticeVector& b);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Rays of a smooth complete two-dimensional fan, sorted counterclockwise
/// starting from the first ray at angle in [0, 2pi). `labels[k]` is the
/// 1-based position of rays[k] in the caller's input.
struct Fan {
  std::vector<LatticeVector> rays;
  std::vector<int> labels;
  std::string name;

  std::size_t size() const { return rays.size(); }
  /// Sorted index of the ray with the given input label, or -1.
  int index_of_label(int label) const;
};

/// Throws Error{NonPrimitiveRay | NotSmooth | NotComplete | TooFewRays}.
Fan parse_fan(std::span<const LatticeVector> rays, std::string name = {});

/// Parses the plain-text fan format:
///   # comment
///   name = P2
///   rays = (1,0) (0,1) (-1,-1)
Fan parse_fan_text(const std::string& text);
Fan load_fan_file(const std::filesystem::path& path);
std::string format_fan_text(const Fan& fan);

/// Built-in surfaces: "P2", "P1xP1", "F1", "Y-bl6".
std::optional<Fan> registered_fan(const std::string& name);
std::vector<std::string> registered_fan_names();

struct PicardData {
  int picard_rank = 0;
  int cohomology_rank = 0;
  /// w_k = sum_a m_matrix[k][a] T_a, rows in sorted-ray order.
  IntMatrix m_matrix;
  /// c_1 = sum_a r_degrees[a] T_a.
  std::vector<std::int64_t> r_degrees;
  /// T_a . T_b
  IntMatrix intersection_form;
  /// T_a = sum_k divisor_section[k][a] D_k.
  IntMatrix divisor_section;
  /// T_a = sum_b basis_change[b][a] T0_b where T0 is the divisor basis
  /// {D_k : k >= 2} complementary to the first two sorted rays.
  IntMatrix basis_change;
  /// D_j . D_k for the toric boundary divisors.
  IntMatrix divisor_intersections;
  /// Coordinates <[D_j], T_a> of each boundary curve class in H_2.
  IntMatrix boundary_curves;
  /// True when the basis is dual to a set of boundary curves generating
  /// the Mori cone, so every effective class has non-negative coordinates.
  bool nef_basis = false;

  /// <d, w_k> for a curve class in T-dual coordinates.
  std::vector<std::int64_t> divisor_degrees(std::span<const std::int64_t> d) const;
  /// <d, c_1>
  std::int64_t anticanonical_degree(std::span<const std::int64_t> d) const;
};

PicardData picard_data(const Fan& fan);

/// D_k^2 for every boundary divisor, from v_{k-1} + v_{k+1} = -D_k^2 v_k.
std::vector<std::int64_t> boundary_self_intersections(const Fan& fan);

bool is_nef_anticanonical(const Fan& fan);

/// Twice the area of the convex hull of the rays.
std::int64_t kouchnirenko_count(const Fan& fan);

/// Twice the area of the convex hull of arbitrary lattice points
/// (0 for degenerate hulls).
std::int64_t normalized_hull_area(std::span<const LatticeVector> points);

}  // namespace toricstokes
