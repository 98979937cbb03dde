#include "toricstokes/derived_euler.hpp"

#include <algorithm>

#include "toricstokes/errors.hpp"

namespace toricstokes {

namespace {

const std::vector<int> kV{1, 2, 0};

std::vector<int> dual(const std::vector<int>& w) {
  std::vector<int> out;
  for (int x : w) out.push_back(((-x) % 3 + 3) % 3);
  return out;
}

std::vector<int> exterior_square(const std::vector<int>& w) {
  std::vector<int> out;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b) out.push_back((w[a] + w[b]) % 3);
  return out;
}

std::int64_t pairing(const PicardData& pd, const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t s = 0;
  for (int i = 0; i < pd.picard_rank; ++i)
    for (int j = 0; j < pd.picard_rank; ++j) s += a[i] * pd.intersection_form[i][j] * b[j];
  return s;
}

}  // namespace

RepCharacter RepCharacter::from_weights(const std::vector<int>& weights) {
  RepCharacter c;
  for (int w : weights) ++c.multiplicities[((w % 3) + 3) % 3];
  return c;
}

std::map<std::pair<int, int>, RepCharacter> beilinson_hom_characters() {
  std::map<std::pair<int, int>, RepCharacter> t;
  for (int i = 1; i <= 3; ++i) t[{i, i}] = RepCharacter::from_weights({0});
  t[{1, 2}] = RepCharacter::from_weights(exterior_square(dual(kV)));
  t[{1, 3}] = RepCharacter::from_weights(dual(kV));
  t[{2, 3}] = RepCharacter::from_weights(kV);
  return t;
}

std::array<int, 3> equivariant_ext_dims(int i, int j, int l, int m) {
  std::array<int, 3> dims{0, 0, 0};
  if (i > l) return dims;
  static const auto table = beilinson_hom_characters();
  dims[0] = table.at({i, l}).multiplicity(j - m);
  return dims;
}

EulerMatrix euler_matrix_y() {
  EulerMatrix e;
  e.entries.assign(9, std::vector<std::int64_t>(9, 0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e.labels.push_back("E" + std::to_string(i) + std::to_string(j));
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      auto dims = equivariant_ext_dims(a / 3 + 1, a % 3, b / 3 + 1, b % 3);
      e.entries[a][b] = dims[0] - dims[1] + dims[2];
    }
  return e;
}

EulerMatrix euler_matrix_line_bundles(const PicardData& pd, const std::vector<std::vector<std::int64_t>>& classes,
                                      const std::vector<std::string>& labels) {
  EulerMatrix e;
  const std::size_t n = classes.size();
  e.labels = labels;
  if (e.labels.size() != n) {
    e.labels.clear();
    for (std::size_t k = 0; k < n; ++k) e.labels.push_back("L" + std::to_string(k));
  }
  const std::vector<std::int64_t>& c1 = pd.r_degrees;
  e.entries.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::int64_t> d(pd.picard_rank);
      for (int i = 0; i < pd.picard_rank; ++i) d[i] = classes[b][i] - classes[a][i];
      // D.(D - K) = D.D + D.c1
      const std::int64_t twice = pairing(pd, d, d) + pairing(pd, d, c1);
      e.entries[a][b] = 1 + twice / 2;
    }
  return e;
}

bool exceptionality_shape_check(const EulerMatrix& e) {
  for (std::size_t i = 0; i < e.entries.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (e.entries[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

LineBundleCollection default_collection(const Fan& fan, const PicardData& pd) {
  const auto self = boundary_self_intersections(fan);
  const int n = static_cast<int>(fan.size());
  auto cls = [&](int k) { return pd.m_matrix[k]; };
  auto add = [](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  const std::vector<std::int64_t> zero(pd.picard_rank, 0);
  LineBundleCollection c;
  if (n == 3) {
    auto h = cls(0);
    c.classes = {zero, h, add(h, h)};
    c.labels = {"O", "O(1)", "O(2)"};
    return c;
  }
  if (n == 4) {
    std::vector<int> zeros, ones;
    for (int k = 0; k < n; ++k) {
      if (self[k] == 0) zeros.push_back(k);
      if (self[k] == 1) ones.push_back(k);
    }
    if (zeros.size() == 4) {
      auto a = cls(0), b = cls(1);
      c.classes = {zero, a, b, add(a, b)};
      c.labels = {"O", "O(1,0)", "O(0,1)", "O(1,1)"};
      return c;
    }
    if (zeros.size() == 2 && ones.size() == 1) {
      auto f = cls(zeros[0]), h = cls(ones[0]);
      c.classes = {zero, f, h, add(h, f)};
      c.labels = {"O", "O(F)", "O(H)", "O(H+F)"};
      return c;
    }
  }
  throw Error(ErrorCode::UnknownSurface, "no built-in exceptional collection for " + fan.name);
}

}  // namespace toricstokes
