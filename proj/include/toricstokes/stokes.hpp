#pragma once

// Stokes matrices from intersection numbers, and their comparison with Euler
// matrices up to orientation signs, cluster relabelling and short braid words.

#include <string>
#include <vector>

#include "toricstokes/lattice_toric.hpp"
#include "toricstokes/monodromy.hpp"

namespace toricstokes {

struct StokesMatrix {
  IntMatrix entries;
  std::vector<int> labels;
};

/// S_aa = 1, S_ab = -(C_a, C_b) for a < b, 0 below the diagonal.
StokesMatrix stokes_from_intersections(const IntersectionMatrix& m);

bool is_unipotent_upper(const IntMatrix& s);

/// One braid move. `position` is 1-based and acts on positions
/// (position, position + 1); `inverse` selects the inverse move.
struct BraidMove {
  int position = 1;
  bool inverse = false;
  friend bool operator==(const BraidMove&, const BraidMove&) = default;
};

StokesMatrix braid_mutation(const StokesMatrix& s, int position);
StokesMatrix inverse_braid_mutation(const StokesMatrix& s, int position);
StokesMatrix apply_braid_word(const StokesMatrix& s, const std::vector<BraidMove>& word);

struct EquivalenceCertificate {
  std::vector<int> sign_vector;
  /// Row i of the compared matrix is row cluster_permutation[i] of the
  /// (braided) Stokes matrix.
  std::vector<int> cluster_permutation;
  /// Applied to the Stokes matrix before signs and permutation; empty when
  /// the orderings already agree.
  std::vector<BraidMove> braid_word;
  bool matched = false;
};

/// Searches D, P with D P S P^T D = E, P permuting only inside `clusters`
/// (lists of positions). If none exists, retries after every braid word of
/// length at most `max_braid_length`; pass 0 to disable.
EquivalenceCertificate compare_up_to_signs(const IntMatrix& s, const IntMatrix& e,
                                           const std::vector<std::vector<int>>& clusters = {},
                                           int max_braid_length = 0);

/// Re-applies a certificate; used to assert it reproduces E.
IntMatrix apply_certificate(const IntMatrix& s, const EquivalenceCertificate& cert);

std::string braid_word_string(const std::vector<BraidMove>& word);
/// Inverse of braid_word_string. Throws ParseError.
std::vector<BraidMove> parse_braid_word(const std::string& text);

}  // namespace toricstokes
