#include "toricstokes/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace toricstokes {

int UniPoly::degree() const {
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d)
    if (coeffs[d] != cplx(0.0)) return d;
  return -1;
}

cplx UniPoly::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  UniPoly d;
  for (std::size_t j = 1; j < coeffs.size(); ++j) d.coeffs.push_back(coeffs[j] * static_cast<double>(j));
  return d;
}

UniPoly UniPoly::trimmed(double rel_tol) const {
  double mx = 0.0;
  for (auto c : coeffs) mx = std::max(mx, std::abs(c));
  UniPoly out = *this;
  while (!out.coeffs.empty() && std::abs(out.coeffs.back()) <= rel_tol * mx) out.coeffs.pop_back();
  return out;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  UniPoly c;
  c.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return c;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  UniPoly c;
  c.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c.coeffs[i] += b.coeffs[i];
  return c;
}

std::vector<cplx> roots(const UniPoly& p_in) {
  UniPoly p = p_in.trimmed(1e-14);
  int n = p.degree();
  if (n < 1) return {};
  // Strip roots at zero exactly; they are common (obstacle factors).
  int zeros = 0;
  while (zeros < n && std::abs(p.coeffs[zeros]) == 0.0) ++zeros;
  std::vector<cplx> out(zeros, 0.0);
  UniPoly q;
  q.coeffs.assign(p.coeffs.begin() + zeros, p.coeffs.end());
  int m = q.degree();
  if (m < 1) return out;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -q.coeffs[i] / q.coeffs[m];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  UniPoly dq = q.derivative();
  for (int i = 0; i < m; ++i) {
    cplx z = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      cplx f = q(z), df = dq(z);
      if (df == cplx(0.0)) break;
      cplx step = f / df;
      cplx z_new = z - step;
      if (!(std::abs(q(z_new)) < std::abs(f))) break;
      z = z_new;
    }
    out.push_back(z);
  }
  return out;
}

int SparsePoly::total_degree() const {
  int d = 0;
  for (const auto& t : terms) {
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

namespace {

template <class C>
C monomial(std::span<const C> z, const std::vector<int>& e) {
  C m = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) m *= z[i];
  return m;
}

template <class C>
std::vector<C> sparse_gradient(const SparsePoly& p, std::span<const C> z) {
  std::vector<C> g(p.nvars, C(0));
  for (const auto& t : p.terms) {
    for (int i = 0; i < p.nvars; ++i) {
      if (t.exponents[i] == 0) continue;
      auto e = t.exponents;
      e[i] -= 1;
      g[i] += C(t.coeff.real(), t.coeff.imag()) * static_cast<typename C::value_type>(t.exponents[i]) *
              monomial<C>(z, e);
    }
  }
  return g;
}

}  // namespace

cplx SparsePoly::eval(std::span<const cplx> z) const {
  cplx s = 0;
  for (const auto& t : terms) s += t.coeff * monomial<cplx>(z, t.exponents);
  return s;
}

lcplx SparsePoly::eval(std::span<const lcplx> z) const {
  lcplx s = 0;
  for (const auto& t : terms) s += lcplx(t.coeff.real(), t.coeff.imag()) * monomial<lcplx>(z, t.exponents);
  return s;
}

std::vector<cplx> SparsePoly::gradient(std::span<const cplx> z) const { return sparse_gradient<cplx>(*this, z); }
std::vector<lcplx> SparsePoly::gradient(std::span<const lcplx> z) const {
  return sparse_gradient<lcplx>(*this, z);
}

cplx determinant(std::vector<cplx> m, int n) {
  Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(m.data(), n, n);
  return a.partialPivLu().determinant();
}

UniPoly resultant_in_y(std::span<const UniPoly> p, std::span<const UniPoly> q) {
  const int n = static_cast<int>(p.size()) - 1;  // formal y-degrees
  const int m = static_cast<int>(q.size()) - 1;
  if (n < 0 || m < 0) return {};
  int dp = 0, dq = 0;
  for (const auto& c : p) dp = std::max(dp, static_cast<int>(c.coeffs.size()) - 1);
  for (const auto& c : q) dq = std::max(dq, static_cast<int>(c.coeffs.size()) - 1);
  const int bound = m * dp + n * dq;
  const int samples = bound + 1;
  const int size = n + m;
  std::vector<cplx> values(samples);
  for (int k = 0; k < samples; ++k) {
    cplx x = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
    std::vector<cplx> pv(n + 1), qv(m + 1);
    for (int j = 0; j <= n; ++j) pv[j] = p[j](x);
    for (int j = 0; j <= m; ++j) qv[j] = q[j](x);
    if (size == 0) {
      values[k] = 1.0;
      continue;
    }
    std::vector<cplx> syl(size * size, 0.0);
    // Rows 0..m-1: shifted coefficients of p (descending); rows m..m+n-1: of q.
    for (int r = 0; r < m; ++r)
      for (int j = 0; j <= n; ++j) syl[r * size + r + j] = pv[n - j];
    for (int r = 0; r < n; ++r)
      for (int j = 0; j <= m; ++j) syl[(m + r) * size + r + j] = qv[m - j];
    values[k] = determinant(std::move(syl), size);
  }
  UniPoly out;
  out.coeffs.assign(samples, 0.0);
  for (int j = 0; j < samples; ++j) {
    cplx s = 0;
    for (int k = 0; k < samples; ++k) s += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / samples);
    out.coeffs[j] = s / static_cast<double>(samples);
  }
  return out;
}

}  // namespace toricstokes
