#include "cyclalg/linalg.hpp"

#include "cyclalg/errors.hpp"

namespace cyclalg {

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  const int n = a.size();
  const FieldTower& F = a(0, 0).tower();
  SeriesMatrix r(n, LaurentSeries::zero(F, a(0, 0).subfield_degree()));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a(i, k).is_zero() && a(i, k).is_exact()) continue;
      for (int j = 0; j < n; ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
    }
  return r;
}

namespace {

int pick_pivot(const SeriesMatrix& m, int col, int from) {
  int best = -1;
  for (int r = from; r < m.size(); ++r) {
    if (m(r, col).is_zero()) continue;
    if (best < 0 || m(r, col).val() < m(best, col).val()) best = r;
  }
  return best;
}

}  // namespace

LaurentSeries determinant(SeriesMatrix m, int cap) {
  const int n = m.size();
  const FieldTower& F = m(0, 0).tower();
  LaurentSeries det = LaurentSeries::constant(F, m(0, 0).subfield_degree(), F.one());
  for (int c = 0; c < n; ++c) {
    const int p = pick_pivot(m, c, c);
    if (p < 0) {
      int P = LaurentSeries::kExact;
      for (int r = c; r < n; ++r) P = std::min(P, m(r, c).prec());
      return LaurentSeries::zero(F, det.subfield_degree(), P) * det;
    }
    if (p != c) {
      for (int k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      det = -det;
    }
    det = det * m(c, c);
    const LaurentSeries inv = inverse(m(c, c), cap);
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero() && m(r, c).is_exact()) continue;
      const LaurentSeries f = m(r, c) * inv;
      for (int k = c + 1; k < n; ++k) m(r, k) = m(r, k) - f * m(c, k);
    }
  }
  return det;
}

std::vector<std::vector<LaurentSeries>> solve(SeriesMatrix m, std::vector<std::vector<LaurentSeries>> rhs, int cap) {
  const int n = m.size();
  for (int c = 0; c < n; ++c) {
    const int p = pick_pivot(m, c, c);
    if (p < 0) throw Error(Errc::DivideByApparentZero, "matrix is singular within precision");
    if (p != c) {
      for (int k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      for (auto& col : rhs) std::swap(col[p], col[c]);
    }
    const LaurentSeries inv = inverse(m(c, c), cap);
    for (int k = c; k < n; ++k) m(c, k) = m(c, k) * inv;
    for (auto& col : rhs) col[c] = col[c] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || (m(r, c).is_zero() && m(r, c).is_exact())) continue;
      const LaurentSeries f = m(r, c);
      for (int k = c; k < n; ++k) m(r, k) = m(r, k) - f * m(c, k);
      for (auto& col : rhs) col[r] = col[r] - f * col[c];
    }
  }
  return rhs;
}

SeriesMatrix inverse(const SeriesMatrix& m, int cap) {
  const int n = m.size();
  const FieldTower& F = m(0, 0).tower();
  const int j = m(0, 0).subfield_degree();
  std::vector<std::vector<LaurentSeries>> cols(static_cast<std::size_t>(n),
                                               std::vector<LaurentSeries>(static_cast<std::size_t>(n), LaurentSeries::zero(F, j)));
  for (int k = 0; k < n; ++k) cols[k][k] = LaurentSeries::constant(F, j, F.one());
  cols = solve(m, std::move(cols), cap);
  SeriesMatrix r(n, LaurentSeries::zero(F, j));
  for (int c = 0; c < n; ++c)
    for (int rr = 0; rr < n; ++rr) r(rr, c) = cols[c][rr];
  return r;
}

bool equal_within(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (!equal_within(a(i, j), b(i, j))) return false;
  return true;
}

}  // namespace cyclalg
