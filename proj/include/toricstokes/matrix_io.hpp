#pragma once

// Integer matrices as plain text:
//   labels: E00 E01 ...
//   1 0 -1
//   ...

#include <string>
#include <vector>

#include "toricstokes/lattice_toric.hpp"

namespace toricstokes {

struct LabelledMatrix {
  IntMatrix entries;
  std::vector<std::string> labels;
  friend bool operator==(const LabelledMatrix&, const LabelledMatrix&) = default;
};

std::string format_matrix(const LabelledMatrix& m);
/// Throws ParseError on ragged rows, non-integers or a label count mismatch.
LabelledMatrix parse_matrix(const std::string& text);

IntMatrix to_int_matrix(const std::vector<std::vector<int>>& m);

}  // namespace toricstokes
