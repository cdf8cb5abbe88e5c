#pragma once

#include <vector>

#include "cyclalg/series.hpp"

namespace cyclalg {

// Dense square matrix of Laurent series, row-major.
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(int n, const LaurentSeries& fill) : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }
  LaurentSeries& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  const LaurentSeries& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

 private:
  int n_ = 0;
  std::vector<LaurentSeries> a_;
};

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
// Gaussian elimination, pivoting on the entry of least valuation.
LaurentSeries determinant(SeriesMatrix m, int cap = kDefaultPrecision);
// Solves m * X = rhs (rhs is n x k, stored as columns).  Throws DivideByApparentZero when singular.
std::vector<std::vector<LaurentSeries>> solve(SeriesMatrix m, std::vector<std::vector<LaurentSeries>> rhs,
                                              int cap = kDefaultPrecision);
SeriesMatrix inverse(const SeriesMatrix& m, int cap = kDefaultPrecision);
bool equal_within(const SeriesMatrix& a, const SeriesMatrix& b);

}  // namespace cyclalg
