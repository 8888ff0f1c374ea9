#pragma once

#include "ddsing/matrix.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace ddsing::detail {

/// Solve M x = b by Gaussian elimination with partial pivoting. Returns
/// nullopt when a pivot falls to or below `pivot_floor`.
template <class T>
std::optional<std::vector<T>> solve_dense(Matrix<T> m, std::vector<T> b, double pivot_floor) {
  using Tr = scalar_traits<T>;
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = static_cast<double>(Tr::modulus(m(c, c)));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double v = static_cast<double>(Tr::modulus(m(r, c)));
      if (v > best) best = v, piv = r;
    }
    if (!(best > pivot_floor)) return std::nullopt;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(c, k), m(piv, k));
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const T f = m(r, c) / m(c, c);
      if (Tr::is_zero(f)) continue;
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
      b[r] -= f * b[c];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m(i, k) * x[k];
    x[i] = s / m(i, i);
  }
  return x;
}

}  // namespace ddsing::detail
