#include "toricstokes/cohomology.hpp"

namespace toricstokes {

RationalClass divisor_class(const PicardData& pd, int k) {
  RationalClass c(pd.picard_rank);
  for (int a = 0; a < pd.picard_rank; ++a) c.deg2[a] = mpq_class(static_cast<long>(pd.m_matrix[k][a]));
  return c;
}

}  // namespace toricstokes
