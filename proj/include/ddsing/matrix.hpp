#pragma once

// Dense square matrices over complex, real and exact rational scalars, plus
// the error type and tolerance bundle shared by every ddsing module.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ddsing {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Errc {
  InvalidArgument,
  DimensionMismatch,
  NonPositiveWeight,
  PreconditionViolated,
  ResidualTooLarge,
  ZeroDiagonal,
  SingularDependentBlock,
  NotApplicable,
  TooLarge,
  DegenerateSupport,
  ParseError,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::ResidualTooLarge: return "ResidualTooLarge";
    case Errc::ZeroDiagonal: return "ZeroDiagonal";
    case Errc::SingularDependentBlock: return "SingularDependentBlock";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DegenerateSupport: return "DegenerateSupport";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Comparison tolerances. tol_dom is relative to |a_ii| + sum_j |a_ij|,
/// tol_angle is absolute in radians, tol_res is relative to the largest row
/// modulus sum.
struct Tolerances {
  double tol_dom = 1e-10;
  double tol_angle = 1e-9;
  double tol_res = 1e-8;

  void validate() const {
    auto ok = [](double t) { return t > 0.0 && t < 0.1; };
    if (!ok(tol_dom) || !ok(tol_angle) || !ok(tol_res))
      throw Error(Errc::InvalidArgument, "tolerances must lie in (0, 0.1)");
  }

  bool operator==(const Tolerances&) const = default;
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  using real_type = double;
  static constexpr bool exact = false;
  static double modulus(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
};

template <>
struct scalar_traits<double> {
  using real_type = double;
  static constexpr bool exact = false;
  static double modulus(double x) { return std::fabs(x); }
  static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct scalar_traits<Rational> {
  using real_type = Rational;
  static constexpr bool exact = true;
  static Rational modulus(const Rational& x) { return abs(x); }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <class T>
using real_of_t = typename scalar_traits<T>::real_type;

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

/// Row-major dense n x n matrix. A default-constructed matrix is empty
/// (n = 0) and only serves as a placeholder; every other constructor
/// enforces n >= 1.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  explicit Matrix(std::size_t n) : n_(n), data_(n * n, T{}) {
    if (n == 0) throw Error(Errc::DimensionMismatch, "matrix dimension must be >= 1");
  }

  Matrix(std::size_t n, std::vector<T> entries) : n_(n), data_(std::move(entries)) {
    if (n == 0) throw Error(Errc::DimensionMismatch, "matrix dimension must be >= 1");
    if (data_.size() != n * n)
      throw Error(Errc::DimensionMismatch, "expected " + std::to_string(n * n) + " entries, got " +
                                               std::to_string(data_.size()));
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    if (n_ == 0) throw Error(Errc::DimensionMismatch, "matrix dimension must be >= 1");
    data_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw Error(Errc::DimensionMismatch, "matrix must be square");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const T> entries() const noexcept { return data_; }

  /// Principal submatrix on the given indices, in the order given.
  Matrix principal(std::span<const std::size_t> idx) const {
    Matrix out(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = (*this)(idx[a], idx[b]);
    return out;
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>(n_, std::move(out));
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;
using RationalMatrix = Matrix<Rational>;

inline ComplexMatrix to_complex(const RationalMatrix& a) {
  return a.map([](const Rational& x) { return Complex(static_cast<double>(x), 0.0); });
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
  return a.map([](double x) { return Complex(x, 0.0); });
}

/// Largest row sum of entry moduli; the scale every relative residual uses.
template <class T>
double max_row_modulus_sum(const Matrix<T>& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (const auto& x : a.row(i)) s += static_cast<double>(scalar_traits<T>::modulus(x));
    best = std::max(best, s);
  }
  return best;
}

/// Reduce an angle to [0, 2pi).
inline double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r + 0.0;  // folds -0.0 into +0.0
}

/// Argument of a nonzero complex number in [0, 2pi).
inline double argument(Complex z) { return reduce_angle(std::atan2(z.imag(), z.real())); }

inline Complex unit(double theta) { return std::polar(1.0, theta); }

}  // namespace ddsing
