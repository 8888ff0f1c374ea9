#pragma once

// Polar split, dominance/balance classification, comparison matrix and
// column scaling for generalized diagonal dominance.

#include "ddsing/matrix.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ddsing {

struct PolarSplit {
  RealMatrix moduli;
  Matrix<std::optional<double>> args;  // present exactly where the entry is nonzero
};

inline PolarSplit polar_split(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  PolarSplit out{RealMatrix(n), Matrix<std::optional<double>>(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = a(i, j);
      out.moduli(i, j) = std::abs(z);
      if (!scalar_traits<Complex>::is_zero(z)) out.args(i, j) = argument(z);
    }
  return out;
}

inline ComplexMatrix reconstruct(const PolarSplit& p) {
  const std::size_t n = p.moduli.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.args(i, j)) out(i, j) = std::polar(p.moduli(i, j), *p.args(i, j));
  return out;
}

/// D(A) as an n-vector.
template <class T>
std::vector<T> diagonal_of(const Matrix<T>& a) {
  std::vector<T> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a(i, i);
  return d;
}

enum class RowClass { Strict, Weak, Violated };

inline const char* to_string(RowClass c) {
  switch (c) {
    case RowClass::Strict: return "strict";
    case RowClass::Weak: return "weak";
    case RowClass::Violated: return "violated";
  }
  return "?";
}

struct RowDominance {
  double diag_modulus = 0.0;
  double offdiag_sum = 0.0;
  RowClass cls = RowClass::Weak;

  bool operator==(const RowDominance&) const = default;
};

struct DominanceProfile {
  std::vector<RowDominance> rows;

  bool all_strict() const {
    for (const auto& r : rows)
      if (r.cls != RowClass::Strict) return false;
    return true;
  }
  bool all_weak() const {
    for (const auto& r : rows)
      if (r.cls != RowClass::Weak) return false;
    return true;
  }
  bool any_strict() const {
    for (const auto& r : rows)
      if (r.cls == RowClass::Strict) return true;
    return false;
  }
  bool dominant() const { return violated_rows().empty(); }
  std::vector<std::size_t> violated_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].cls == RowClass::Violated) out.push_back(i);
    return out;
  }
};

/// Decide one row from its diagonal modulus and off-diagonal modulus sum.
/// Inexact scalars use a band of tol_dom * (diag + off) around equality;
/// exact scalars compare directly.
template <class R>
RowClass classify(const R& diag, const R& off, double tol_dom) {
  if constexpr (std::is_same_v<R, Rational>) {
    if (diag > off) return RowClass::Strict;
    if (diag == off) return RowClass::Weak;
    return RowClass::Violated;
  } else {
    const double scale = diag + off;
    if (scale == 0.0) return RowClass::Weak;
    const double band = tol_dom * scale;
    if (diag > off + band) return RowClass::Strict;
    if (std::fabs(diag - off) <= band) return RowClass::Weak;
    return RowClass::Violated;
  }
}

template <class T>
DominanceProfile classify_rows(const Matrix<T>& a, const Tolerances& tol = {}) {
  using Tr = scalar_traits<T>;
  DominanceProfile p;
  p.rows.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    real_of_t<T> diag = Tr::modulus(a(i, i));
    real_of_t<T> off{0};
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) off += Tr::modulus(a(i, j));
    p.rows.push_back({static_cast<double>(diag), static_cast<double>(off), classify(diag, off, tol.tol_dom)});
  }
  return p;
}

enum class Axis { Row, Column };

struct BalanceResult {
  std::vector<bool> lines;
  bool all = true;
};

/// Line i is balanced when |sum_j a_ij| <= tol_dom * sum_j |a_ij| (exact
/// scalars: when the sum is zero).
template <class T>
BalanceResult balance_check(const Matrix<T>& a, Axis axis, const Tolerances& tol = {}) {
  using Tr = scalar_traits<T>;
  const std::size_t n = a.size();
  BalanceResult out;
  out.lines.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    T sum{0};
    real_of_t<T> mass{0};
    for (std::size_t j = 0; j < n; ++j) {
      const T& x = axis == Axis::Row ? a(i, j) : a(j, i);
      sum += x;
      mass += Tr::modulus(x);
    }
    bool ok;
    if constexpr (is_exact_v<T>)
      ok = sum == 0;
    else
      ok = Tr::modulus(sum) <= tol.tol_dom * mass;
    out.lines[i] = ok;
    out.all = out.all && ok;
  }
  return out;
}

/// mu(A): |a_ii| on the diagonal, -|a_ij| elsewhere.
template <class T>
Matrix<real_of_t<T>> comparison_matrix(const Matrix<T>& a) {
  using Tr = scalar_traits<T>;
  const std::size_t n = a.size();
  Matrix<real_of_t<T>> mu(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mu(i, j) = i == j ? Tr::modulus(a(i, j)) : -Tr::modulus(a(i, j));
  return mu;
}

/// A * diag(v). Row i of the result is dominant exactly when
/// |a_ii| v_i >= sum_{j != i} |a_ij| v_j.
template <class T>
Matrix<T> scale_columns(const Matrix<T>& a, std::span<const real_of_t<T>> v) {
  const std::size_t n = a.size();
  if (v.size() != n)
    throw Error(Errc::DimensionMismatch,
                "weight vector has " + std::to_string(v.size()) + " entries, matrix has n = " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (!(v[i] > 0)) throw Error(Errc::NonPositiveWeight, "weight " + std::to_string(i + 1) + " is not positive");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) *= v[j];
  return out;
}

template <class T>
Matrix<T> scale_columns(const Matrix<T>& a, const std::vector<real_of_t<T>>& v) {
  return scale_columns(a, std::span<const real_of_t<T>>(v));
}

}  // namespace ddsing
