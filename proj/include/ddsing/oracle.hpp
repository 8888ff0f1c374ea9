#pragma once

// Brute-force ground truth: rank, determinant and null space by Gaussian
// elimination. Shares no code with the analyzer.

#include "ddsing/matrix.hpp"

#include <cmath>
#include <vector>

namespace ddsing {

struct OracleResult {
  std::size_t rank = 0;
  Complex det{0.0, 0.0};  // zero whenever rank < n
  std::vector<std::vector<Complex>> null_basis;

  bool singular(std::size_t n) const { return rank < n; }
};

inline constexpr std::size_t kOracleMaxDim = 64;

/// Partial-pivoting elimination; a pivot at or below
/// pivot_tol * (largest initial row modulus sum) counts as zero and its
/// column becomes free.
inline OracleResult rank_det_oracle(const ComplexMatrix& a, double pivot_tol = 1e-10) {
  const std::size_t n = a.size();
  if (n > kOracleMaxDim) throw Error(Errc::TooLarge, "oracle is capped at n = 64");
  const double threshold = pivot_tol * max_row_modulus_sum(a);

  ComplexMatrix u = a;
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(n, false);
  Complex det{1.0, 0.0};
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < n; ++c) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < n; ++r)
      if (std::abs(u(r, c)) > std::abs(u(best, c))) best = r;
    if (!(std::abs(u(best, c)) > threshold)) continue;
    if (best != row) {
      for (std::size_t k = 0; k < n; ++k) std::swap(u(row, k), u(best, k));
      det = -det;
    }
    det *= u(row, c);
    for (std::size_t r = row + 1; r < n; ++r) {
      const Complex f = u(r, c) / u(row, c);
      for (std::size_t k = c; k < n; ++k) u(r, k) -= f * u(row, k);
    }
    pivot_cols.push_back(c);
    is_pivot[c] = true;
    ++row;
  }

  OracleResult res;
  res.rank = pivot_cols.size();
  res.det = res.rank == n ? det : Complex{0.0, 0.0};
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Complex> x(n, Complex{0.0, 0.0});
    x[f] = 1.0;
    for (std::size_t r = pivot_cols.size(); r-- > 0;) {
      const std::size_t pc = pivot_cols[r];
      Complex s{0.0, 0.0};
      for (std::size_t k = pc + 1; k < n; ++k) s += u(r, k) * x[k];
      x[pc] = -s / u(r, pc);
    }
    res.null_basis.push_back(std::move(x));
  }
  return res;
}

struct ExactOracleResult {
  std::size_t rank = 0;
  Rational det{0};
};

/// Exact rank and determinant of a rational matrix.
inline ExactOracleResult exact_rank_det(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix u = a;
  Rational det{1};
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < n; ++c) {
    std::size_t piv = row;
    while (piv < n && u(piv, c) == 0) ++piv;
    if (piv == n) continue;
    if (piv != row) {
      for (std::size_t k = 0; k < n; ++k) std::swap(u(row, k), u(piv, k));
      det = -det;
    }
    det *= u(row, c);
    for (std::size_t r = row + 1; r < n; ++r) {
      if (u(r, c) == 0) continue;
      const Rational f = u(r, c) / u(row, c);
      for (std::size_t k = c; k < n; ++k) u(r, k) -= f * u(row, k);
    }
    ++row;
  }
  return {row, row == n ? det : Rational{0}};
}

}  // namespace ddsing
