#pragma once

// End-to-end verification: fan -> mirror -> vanishing cycles -> Stokes
// matrix, exceptional collection -> Euler matrix, and their comparison.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricstokes/config.hpp"
#include "toricstokes/derived_euler.hpp"
#include "toricstokes/ifunction.hpp"
#include "toricstokes/monodromy.hpp"
#include "toricstokes/stokes.hpp"

namespace toricstokes {

/// Registered name, or a fan file when `fan_file` is set.
Fan resolve_surface(const std::string& name, const std::optional<std::filesystem::path>& fan_file = {});

/// Coefficients of the mirror used by the pipeline: c_3 = c_8 = c_9 = 1 and
/// the rest 0 for Y-bl6, all ones otherwise.
LaurentPolynomial pipeline_superpotential(const Fan& fan);

/// Pairing vectors of a transported cycle against the basis, compared with
/// the prediction x + sigma * sum_a (C_a, x) C_a over the loop's cluster.
struct LocalMonodromyCheck {
  int cluster = 0;  // index into ordered.clusters
  int position = 0; // transported cycle
  std::vector<int> observed;
  bool plus_ok = false;   // sigma = +1
  bool minus_ok = false;  // sigma = -1
};

struct PicardLefschetzReport {
  std::vector<LocalMonodromyCheck> local;
  /// +1 or -1 when one sign explains every local check, else 0.
  int sigma = 0;
  bool local_ok = false;
  /// Transport around the large loop against T_1 T_2 ... T_N (T_N first).
  std::vector<std::vector<int>> large_observed;
  std::vector<std::vector<int>> large_predicted;
  bool large_ok = false;
};

/// Numerically realised braid move: the moved cycle is transported around
/// its neighbour's critical value and all pairings are recomputed.
struct GeometricMutation {
  std::vector<BraidMove> word;
  bool realised = false;
  bool counterclockwise = true;
  IntMatrix geometric_stokes;
  IntMatrix formula_stokes;
  bool agrees = false;
  bool matches_euler = false;
  std::string note;
};

struct IFunctionSummary {
  int max_degree = 0;
  int max_norm = 0;
  std::size_t terms = 0;
  bool homogeneous = false;
  int gkz_classes = 0;
  bool gkz_zero = false;
  bool mirror_identity = false;
  ConvergenceDomain convergence;
};

struct VerificationReport {
  std::string surface;
  Fan fan;
  PipelineConfig config;
  std::vector<std::string> stages;  // completed, in order

  LaurentPolynomial w;
  std::vector<CriticalPoint> critical_points;
  cplx requested_base{};
  OrderedCriticalValues ordered;

  bool cover_swapped = false;
  int sheet_count = 0;
  std::vector<cplx> branch_points;
  std::vector<cplx> punctures;
  std::vector<std::vector<cplx>> paths;  // by label
  std::vector<VanishingCycle> cycles;    // in distinguished order
  std::vector<std::vector<int>> cycle_sheets;

  IntersectionMatrix intersections;
  StokesMatrix stokes;
  EulerMatrix euler;
  EquivalenceCertificate certificate;
  bool certificate_reproduces = false;

  std::optional<bool> epsilon_independent;
  std::optional<GeometricMutation> mutation;
  std::optional<PicardLefschetzReport> picard_lefschetz;
  std::optional<IFunctionSummary> ifunction;

  std::vector<std::pair<std::string, double>> timings;

  bool has_stage(const std::string& s) const;
  bool matched() const { return certificate.matched && certificate_reproduces; }
};

/// Errors leave with Error::stage() set to the failing stage: toric,
/// superpotential, ordering, monodromy, stokes, euler, compare, ifunction,
/// checks.
VerificationReport run_verify(const Fan& fan, const PipelineConfig& cfg = {});

PicardLefschetzReport picard_lefschetz_check(const FiberCover& cover, const std::vector<VanishingCycle>& cycles,
                                             const OrderedCriticalValues& ordered,
                                             const std::vector<std::vector<cplx>>& paths,
                                             const IntersectionMatrix& q, const MonodromyConfig& cfg = {});

GeometricMutation realise_braid_word(const FiberCover& cover, const std::vector<VanishingCycle>& cycles,
                                     const OrderedCriticalValues& ordered,
                                     const std::vector<std::vector<cplx>>& paths, const StokesMatrix& stokes,
                                     const EulerMatrix& euler, const std::vector<BraidMove>& word,
                                     const MonodromyConfig& cfg = {});

}  // namespace toricstokes
