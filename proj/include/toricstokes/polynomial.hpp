#pragma once

#include <complex>
#include <span>
#include <vector>

namespace toricstokes {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

/// Univariate polynomial, coefficients in ascending degree.
struct UniPoly {
  std::vector<cplx> coeffs;

  int degree() const;
  cplx operator()(cplx z) const;
  UniPoly derivative() const;
  /// Drops leading coefficients with |c| <= rel_tol * max|c|.
  UniPoly trimmed(double rel_tol = 0.0) const;
};

UniPoly operator*(const UniPoly& a, const UniPoly& b);
UniPoly operator+(const UniPoly& a, const UniPoly& b);

/// All complex roots (with multiplicity) via companion-matrix eigenvalues,
/// polished by Newton iteration. Returns an empty list for constants.
std::vector<cplx> roots(const UniPoly& p);

/// Sparse polynomial in n variables.
struct SparsePoly {
  struct Term {
    std::vector<int> exponents;
    cplx coeff;
  };
  int nvars = 0;
  std::vector<Term> terms;

  int total_degree() const;
  cplx eval(std::span<const cplx> z) const;
  lcplx eval(std::span<const lcplx> z) const;
  /// Partial derivatives at z.
  std::vector<cplx> gradient(std::span<const cplx> z) const;
  std::vector<lcplx> gradient(std::span<const lcplx> z) const;
};

/// Determinant of a small dense complex matrix (row-major, n x n).
cplx determinant(std::vector<cplx> m, int n);

/// Resultant in y of two polynomials whose y-coefficients are polynomials in
/// x: p = sum_j p[j](x) y^j. Computed by evaluating the Sylvester determinant
/// on a circle and interpolating.
UniPoly resultant_in_y(std::span<const UniPoly> p, std::span<const UniPoly> q);

}  // namespace toricstokes
