#pragma once

// Graded cohomology ring H^0 + H^2 + H^4 of a toric surface.

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "toricstokes/lattice_toric.hpp"

namespace toricstokes {

template <class T>
struct GradedClass {
  T deg0{};
  std::vector<T> deg2;  // coordinates in the basis T_a
  T deg4{};             // multiple of the point class

  GradedClass() = default;
  explicit GradedClass(int rank) : deg2(rank, T{}) {}

  static GradedClass unit(int rank) {
    GradedClass c(rank);
    c.deg0 = T(1);
    return c;
  }
  static GradedClass basis(int rank, int a) {
    GradedClass c(rank);
    c.deg2[a] = T(1);
    return c;
  }
  static GradedClass point(int rank) {
    GradedClass c(rank);
    c.deg4 = T(1);
    return c;
  }

  int rank() const { return static_cast<int>(deg2.size()); }

  bool is_zero() const {
    if (deg0 != T{} || deg4 != T{}) return false;
    for (const auto& x : deg2)
      if (x != T{}) return false;
    return true;
  }

  GradedClass& operator+=(const GradedClass& o) {
    deg0 += o.deg0;
    for (std::size_t a = 0; a < deg2.size(); ++a) deg2[a] += o.deg2[a];
    deg4 += o.deg4;
    return *this;
  }
  GradedClass& operator-=(const GradedClass& o) {
    deg0 -= o.deg0;
    for (std::size_t a = 0; a < deg2.size(); ++a) deg2[a] -= o.deg2[a];
    deg4 -= o.deg4;
    return *this;
  }
  GradedClass& operator*=(const T& s) {
    deg0 *= s;
    for (auto& x : deg2) x *= s;
    deg4 *= s;
    return *this;
  }
  friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
  friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
  friend GradedClass operator*(GradedClass a, const T& s) { return a *= s; }
  friend bool operator==(const GradedClass& a, const GradedClass& b) {
    return a.deg0 == b.deg0 && a.deg2 == b.deg2 && a.deg4 == b.deg4;
  }
};

using CohomologyClass = GradedClass<std::complex<double>>;
using RationalClass = GradedClass<mpq_class>;

/// Cup product; degree-2 times degree-2 uses the intersection form.
template <class T>
GradedClass<T> ring_multiply(const GradedClass<T>& a, const GradedClass<T>& b,
                             const PicardData& pd) {
  const int rho = pd.picard_rank;
  GradedClass<T> c(rho);
  c.deg0 = a.deg0 * b.deg0;
  for (int i = 0; i < rho; ++i) c.deg2[i] = a.deg0 * b.deg2[i] + b.deg0 * a.deg2[i];
  T pairing{};
  for (int i = 0; i < rho; ++i)
    for (int j = 0; j < rho; ++j) {
      const auto q = pd.intersection_form[i][j];
      if (q != 0) pairing += a.deg2[i] * b.deg2[j] * T(static_cast<long>(q));
    }
  c.deg4 = a.deg0 * b.deg4 + b.deg0 * a.deg4 + pairing;
  return c;
}

/// w_k as a class.
RationalClass divisor_class(const PicardData& pd, int k);

}  // namespace toricstokes
