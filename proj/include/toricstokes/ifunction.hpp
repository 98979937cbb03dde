#pragma once

// Truncated I-function with coefficients in the cohomology ring, GKZ and
// homogeneity checks, convergence constants and the mirror map.

#include <map>
#include <string>
#include <vector>

#include "toricstokes/cohomology.hpp"

namespace toricstokes {

using CurveClass = std::vector<std::int64_t>;

/// Coefficient of q^d after stripping exp((t0 + Tt)/hbar). The key is the
/// power of 1/hbar.
using HbarSeries = std::map<int, RationalClass>;

struct ISeriesTruncation {
  int max_degree = 0;  // cap on <d, -K>
  int max_norm = 0;    // cap on sum |d_a|
  std::vector<std::int64_t> r_degrees;
  std::map<CurveClass, HbarSeries> coefficients;
  bool prefactor_stripped = true;
};

/// Coefficient of q^d for any lattice vector d (zero for most non-effective d).
HbarSeries i_coefficient(const PicardData& pd, const CurveClass& d);

/// All nonzero coefficients with 0 <= <d, -K> <= max_degree and
/// sum |d_a| <= max_norm (default max_degree + 2). Throws NotNef.
ISeriesTruncation i_series(const PicardData& pd, int max_degree, int max_norm = -1);

bool anticanonical_nef(const PicardData& pd);

struct GkzResidual {
  int checked_terms = 0;
  /// Largest |coordinate| of the operator applied to the truncation inside
  /// the window; exactly zero when the equation holds.
  mpq_class max_abs = 0;
  bool zero() const { return max_abs == 0; }
};

/// Applies the GKZ operator for d to the truncation, at every q^e for which
/// the truncation determines the answer.
GkzResidual gkz_residual(const PicardData& pd, const CurveClass& d, const ISeriesTruncation& trunc);

/// class-degree/2 - (power of 1/hbar) + <d, -K> == 0 for every stored term.
bool homogeneity_check(const ISeriesTruncation& trunc);

struct ConvergenceDomain {
  double c1 = 0.0;
  double c2 = 0.0;
  int exponent = 0;  // max_a sum_k |m_ka|
  /// |q_a| < radius for every a, with radius = 1 / c2.
  double radius = 0.0;
  std::string description;
};

ConvergenceDomain convergence_domain(const PicardData& pd);

/// Operator norm (max row sum) of multiplication by c on the graded basis.
double multiplication_norm(const RationalClass& c, const PicardData& pd);

using ScalarSeries = std::map<CurveClass, mpq_class>;
using VectorSeries = std::map<CurveClass, std::vector<mpq_class>>;

struct MirrorMapData {
  ScalarSeries i0;
  ScalarSeries i10;
  VectorSeries i11;
  /// t0~ - t0 = i10 / i0 and t~ - t = i11 / i0.
  ScalarSeries t0_shift;
  VectorSeries t_shift;
  bool identity() const;
};

MirrorMapData mirror_map(const ISeriesTruncation& trunc);

/// One line per term: "d=(..) k=.. deg0 | deg2... | deg4" with exact rationals.
std::string series_text(const ISeriesTruncation& trunc);

}  // namespace toricstokes
