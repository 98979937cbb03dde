#include "toricstokes/stokes.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

StokesMatrix stokes_from_intersections(const IntersectionMatrix& m) {
  const std::size_t n = m.entries.size();
  StokesMatrix s;
  s.labels = m.ordering;
  s.entries.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    s.entries[a][a] = 1;
    for (std::size_t b = a + 1; b < n; ++b) s.entries[a][b] = -m.entries[a][b];
  }
  return s;
}

bool is_unipotent_upper(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (s[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

namespace {

StokesMatrix braid(const StokesMatrix& s, int position, bool inverse) {
  const int n = static_cast<int>(s.entries.size());
  if (position < 1 || position >= n)
    throw Error(ErrorCode::IndexOutOfRange, "braid position " + std::to_string(position) + " outside 1.." +
                                                std::to_string(n - 1));
  const int i = position - 1, j = position;
  const std::int64_t x = s.entries[i][j];
  // B acts on coordinates i, j; S' = B S B^T.
  std::int64_t b[2][2];
  if (!inverse) {
    b[0][0] = -x, b[0][1] = 1, b[1][0] = 1, b[1][1] = 0;
  } else {
    b[0][0] = 0, b[0][1] = 1, b[1][0] = 1, b[1][1] = -x;
  }
  auto apply_rows = [&](IntMatrix& m) {
    for (int c = 0; c < n; ++c) {
      std::int64_t u = m[i][c], v = m[j][c];
      m[i][c] = b[0][0] * u + b[0][1] * v;
      m[j][c] = b[1][0] * u + b[1][1] * v;
    }
  };
  IntMatrix m = s.entries;
  apply_rows(m);
  for (int r = 0; r < n; ++r) {
    std::int64_t u = m[r][i], v = m[r][j];
    m[r][i] = b[0][0] * u + b[0][1] * v;
    m[r][j] = b[1][0] * u + b[1][1] * v;
  }
  StokesMatrix out{m, s.labels};
  if (out.labels.size() == static_cast<std::size_t>(n)) std::swap(out.labels[i], out.labels[j]);
  return out;
}

// Signs d with d_i d_j s_ij = e_ij, by parity propagation over the
// constraint graph; empty when inconsistent.
std::vector<int> solve_signs(const IntMatrix& s, const IntMatrix& e) {
  const int n = static_cast<int>(s.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int i = 0; i < n; ++i) {
    if (s[i][i] != e[i][i]) return {};
    for (int j = i + 1; j < n; ++j) {
      if (s[j][i] != 0 || e[j][i] != 0) return {};
      if (std::llabs(s[i][j]) != std::llabs(e[i][j])) return {};
      if (s[i][j] == 0) continue;
      int parity = (s[i][j] == e[i][j]) ? 1 : -1;
      adj[i].push_back({j, parity});
      adj[j].push_back({i, parity});
    }
  }
  std::vector<int> d(n, 0);
  for (int root = 0; root < n; ++root) {
    if (d[root] != 0) continue;
    d[root] = 1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, p] : adj[v]) {
        if (d[w] == 0) {
          d[w] = d[v] * p;
          stack.push_back(w);
        } else if (d[w] != d[v] * p) {
          return {};
        }
      }
    }
  }
  return d;
}

IntMatrix permuted(const IntMatrix& s, const std::vector<int>& perm) {
  const std::size_t n = s.size();
  IntMatrix out(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = s[perm[i]][perm[j]];
  return out;
}

EquivalenceCertificate match_signs_and_clusters(const IntMatrix& s, const IntMatrix& e,
                                                const std::vector<std::vector<int>>& clusters) {
  const int n = static_cast<int>(s.size());
  EquivalenceCertificate cert;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> groups;
  for (const auto& c : clusters)
    if (c.size() > 1) groups.push_back(c);

  std::function<bool(std::size_t)> search = [&](std::size_t g) -> bool {
    if (g == groups.size()) {
      auto d = solve_signs(permuted(s, perm), e);
      if (d.empty()) return false;
      cert.sign_vector = d;
      cert.cluster_permutation = perm;
      cert.matched = true;
      return true;
    }
    std::vector<int> img = groups[g];
    std::sort(img.begin(), img.end());
    do {
      for (std::size_t k = 0; k < groups[g].size(); ++k) perm[groups[g][k]] = img[k];
      if (search(g + 1)) return true;
    } while (std::next_permutation(img.begin(), img.end()));
    for (int p : groups[g]) perm[p] = p;
    return false;
  };
  search(0);
  return cert;
}

}  // namespace

StokesMatrix braid_mutation(const StokesMatrix& s, int position) { return braid(s, position, false); }
StokesMatrix inverse_braid_mutation(const StokesMatrix& s, int position) { return braid(s, position, true); }

StokesMatrix apply_braid_word(const StokesMatrix& s, const std::vector<BraidMove>& word) {
  StokesMatrix out = s;
  for (const auto& m : word) out = braid(out, m.position, m.inverse);
  return out;
}

EquivalenceCertificate compare_up_to_signs(const IntMatrix& s, const IntMatrix& e,
                                           const std::vector<std::vector<int>>& clusters, int max_braid_length) {
  EquivalenceCertificate none;
  if (s.size() != e.size()) return none;
  auto cert = match_signs_and_clusters(s, e, clusters);
  if (cert.matched || max_braid_length <= 0) return cert;

  const int n = static_cast<int>(s.size());
  std::vector<std::vector<BraidMove>> frontier{{}};
  for (int len = 1; len <= max_braid_length; ++len) {
    std::vector<std::vector<BraidMove>> next;
    for (const auto& word : frontier)
      for (int p = 1; p < n; ++p)
        for (bool inv : {false, true}) {
          if (!word.empty() && word.back().position == p && word.back().inverse != inv) continue;
          auto w = word;
          w.push_back({p, inv});
          auto braided = apply_braid_word(StokesMatrix{s, {}}, w).entries;
          // Braid moves mix positions, so only singleton clusters survive them.
          auto c = match_signs_and_clusters(braided, e, {});
          if (c.matched) {
            c.braid_word = w;
            return c;
          }
          next.push_back(std::move(w));
        }
    frontier = std::move(next);
  }
  return none;
}

IntMatrix apply_certificate(const IntMatrix& s, const EquivalenceCertificate& cert) {
  IntMatrix m = apply_braid_word(StokesMatrix{s, {}}, cert.braid_word).entries;
  m = permuted(m, cert.cluster_permutation);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] *= cert.sign_vector[i] * cert.sign_vector[j];
  return m;
}

std::string braid_word_string(const std::vector<BraidMove>& word) {
  std::ostringstream os;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) os << ' ';
    os << 's' << word[k].position << (word[k].inverse ? "^-1" : "");
  }
  return word.empty() ? "identity" : os.str();
}

std::vector<BraidMove> parse_braid_word(const std::string& text) {
  std::vector<BraidMove> word;
  if (text == "identity") return word;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    BraidMove m;
    m.inverse = tok.ends_with("^-1");
    if (m.inverse) tok.resize(tok.size() - 3);
    const char* end = tok.data() + tok.size();
    if (tok.size() < 2 || tok[0] != 's' || std::from_chars(tok.data() + 1, end, m.position).ptr != end)
      throw Error(ErrorCode::ParseError, "malformed braid word '" + text + "'");
    word.push_back(m);
  }
  return word;
}

}  // namespace toricstokes
