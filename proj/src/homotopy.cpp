#include "toricstokes/homotopy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <thread>

namespace toricstokes {

namespace {

using VecX = Eigen::VectorXcd;
using MatX = Eigen::MatrixXcd;

struct Homogenized {
  std::vector<SparsePoly> target;  // in Z = (z0, z1..zn)
  std::vector<int> degrees;
  VecX patch;
  cplx gamma;
  int n = 0;

  VecX eval(const VecX& z, double tau) const {
    VecX h(n + 1);
    std::span<const cplx> zs(z.data(), z.size());
    for (int i = 0; i < n; ++i) {
      cplx g = std::pow(z[i + 1], degrees[i]) - std::pow(z[0], degrees[i]);
      h[i] = (1.0 - tau) * target[i].eval(zs) + tau * gamma * g;
    }
    h[n] = patch.dot(z) - 1.0;  // dot conjugates the first argument
    return h;
  }

  MatX jacobian(const VecX& z, double tau) const {
    MatX j = MatX::Zero(n + 1, n + 1);
    std::span<const cplx> zs(z.data(), z.size());
    for (int i = 0; i < n; ++i) {
      auto grad = target[i].gradient(zs);
      for (int c = 0; c <= n; ++c) j(i, c) = (1.0 - tau) * grad[c];
      const int d = degrees[i];
      j(i, i + 1) += tau * gamma * static_cast<double>(d) * std::pow(z[i + 1], d - 1);
      j(i, 0) -= tau * gamma * static_cast<double>(d) * std::pow(z[0], d - 1);
    }
    for (int c = 0; c <= n; ++c) j(n, c) = std::conj(patch[c]);
    return j;
  }

  VecX dtau(const VecX& z) const {
    VecX h = VecX::Zero(n + 1);
    std::span<const cplx> zs(z.data(), z.size());
    for (int i = 0; i < n; ++i) {
      cplx g = std::pow(z[i + 1], degrees[i]) - std::pow(z[0], degrees[i]);
      h[i] = -target[i].eval(zs) + gamma * g;
    }
    return h;
  }

  VecX velocity(const VecX& z, double tau) const {
    return jacobian(z, tau).partialPivLu().solve(-dtau(z));
  }
};

bool newton_correct(const Homogenized& hs, VecX& z, double tau, int iters, double tol) {
  double prev = 1e300;
  for (int it = 0; it < iters; ++it) {
    VecX dz = hs.jacobian(z, tau).partialPivLu().solve(-hs.eval(z, tau));
    double nd = dz.norm();
    if (!std::isfinite(nd)) return false;
    if (it > 0 && nd > 0.5 * prev) return false;
    z += dz;
    prev = nd;
    if (nd < tol * (1.0 + z.norm())) return true;
  }
  return false;
}

PathResult track(const Homogenized& hs, VecX z, const HomotopyConfig& cfg) {
  PathResult res;
  double tau = 1.0;
  double h = 0.01;
  int successes = 0;
  VecX last_good = z;
  while (tau > 0.0 && res.steps < cfg.max_steps) {
    ++res.steps;
    double step = std::min(h, tau);
    double t1 = tau - step;
    // RK4 predictor in tau (decreasing).
    VecX k1 = hs.velocity(z, tau);
    VecX k2 = hs.velocity(z - 0.5 * step * k1, tau - 0.5 * step);
    VecX k3 = hs.velocity(z - 0.5 * step * k2, tau - 0.5 * step);
    VecX k4 = hs.velocity(z - step * k3, t1);
    VecX pred = z - (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (pred.allFinite() && newton_correct(hs, pred, t1, 4, 1e-10)) {
      z = pred;
      tau = t1;
      last_good = z;
      if (++successes >= 3) {
        h = std::min(cfg.max_step, h * 1.6);
        successes = 0;
      }
    } else {
      h *= 0.5;
      successes = 0;
      if (h < cfg.min_step) break;
    }
  }
  z = last_good;
  if (tau == 0.0) {
    VecX refined = z;
    res.converged = newton_correct(hs, refined, 0.0, 8, 1e-14);
    if (res.converged) z = refined;
  }
  const double scale = z.norm();
  if (scale > 0 && std::abs(z[0]) / scale > cfg.infinity_tol) {
    res.finite = true;
    for (int i = 1; i <= hs.n; ++i) res.affine.push_back(z[i] / z[0]);
  }
  return res;
}

}  // namespace

std::vector<PathResult> solve_total_degree(const std::vector<SparsePoly>& system,
                                           const HomotopyConfig& cfg) {
  Homogenized hs;
  hs.n = static_cast<int>(system.size());
  for (const auto& f : system) {
    const int d = f.total_degree();
    hs.degrees.push_back(d);
    SparsePoly h;
    h.nvars = hs.n + 1;
    for (const auto& t : f.terms) {
      int s = 0;
      for (int e : t.exponents) s += e;
      std::vector<int> e{d - s};
      e.insert(e.end(), t.exponents.begin(), t.exponents.end());
      h.terms.push_back({std::move(e), t.coeff});
    }
    hs.target.push_back(std::move(h));
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  hs.gamma = std::polar(1.0, angle(rng));
  hs.patch = VecX(hs.n + 1);
  for (int i = 0; i <= hs.n; ++i) hs.patch[i] = cplx(normal(rng), normal(rng));

  // Enumerate start solutions.
  std::vector<VecX> starts;
  std::vector<int> idx(hs.n, 0);
  while (true) {
    VecX z(hs.n + 1);
    z[0] = 1.0;
    for (int i = 0; i < hs.n; ++i)
      z[i + 1] = std::polar(1.0, 2.0 * std::numbers::pi * idx[i] / hs.degrees[i]);
    z /= hs.patch.dot(z);
    starts.push_back(z);
    int i = 0;
    while (i < hs.n && ++idx[i] == hs.degrees[i]) idx[i++] = 0;
    if (i == hs.n) break;
  }

  std::vector<PathResult> results(starts.size());
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(starts.size()));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < threads; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t p = w; p < starts.size(); p += threads) results[p] = track(hs, starts[p], cfg);
    }));
  }
  for (auto& j : jobs) j.get();
  return results;
}

}  // namespace toricstokes
