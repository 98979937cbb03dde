#include "toricstokes/matrix_io.hpp"

#include <charconv>
#include <sstream>

#include "toricstokes/errors.hpp"

namespace toricstokes {

std::string format_matrix(const LabelledMatrix& m) {
  std::ostringstream os;
  os << "labels:";
  for (const auto& l : m.labels) os << ' ' << l;
  os << '\n';
  for (const auto& row : m.entries) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << '\n';
  }
  return os.str();
}

LabelledMatrix parse_matrix(const std::string& text) {
  LabelledMatrix m;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    if (!header && line.rfind("labels:", 0) == 0) {
      ls >> tok;
      while (ls >> tok) m.labels.push_back(tok);
      header = true;
      continue;
    }
    std::vector<std::int64_t> row;
    while (ls >> tok) {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw Error(ErrorCode::ParseError, "not an integer: '" + tok + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!m.entries.empty() && row.size() != m.entries.front().size())
      throw Error(ErrorCode::ParseError, "ragged matrix row");
    m.entries.push_back(std::move(row));
  }
  if (!m.entries.empty() && m.entries.size() != m.entries.front().size())
    throw Error(ErrorCode::ParseError, "matrix is not square");
  if (!m.labels.empty() && m.labels.size() != m.entries.size())
    throw Error(ErrorCode::ParseError, "label count does not match matrix size");
  return m;
}

IntMatrix to_int_matrix(const std::vector<std::vector<int>>& m) {
  IntMatrix out;
  for (const auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

}  // namespace toricstokes
