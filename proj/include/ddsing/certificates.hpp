#pragma once

// Certificates for singular irreducible blocks.
//
// With gamma the unit-modulus right null vector and Y = diag(gamma):
//
//   Y^-1 A Y = D(A_C) mu(A) = D(A) (I - S),   S_ij = |a_ij| / |a_ii|
//
// and with p > 0 the left null vector of mu(A), rho = diag(p) D^-1(A_C) Y^-1
// is a left null vector of A and diag(rho) A Y is real, doubly balanced,
// with positive diagonal and nonpositive off-diagonal.
//
// All residuals are infinity norms divided by the block's largest row
// modulus sum; left-side residuals are additionally divided by max |rho_i|.

#include "ddsing/angle_system.hpp"
#include "ddsing/detail/dense_solve.hpp"
#include "ddsing/digraph.hpp"
#include "ddsing/dominance.hpp"
#include "ddsing/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace ddsing {

namespace detail {

inline double relative(double value, double scale) { return scale > 0.0 ? value / scale : value; }

inline void check_residual(const char* what, double residual, double limit) {
  if (!(residual <= limit)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " residual %.3e exceeds %.3e", residual, limit);
    throw Error(Errc::ResidualTooLarge, what + std::string(buf));
  }
}

inline double max_modulus(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

inline double diag_argument(const ComplexMatrix& a, std::size_t i) {
  return scalar_traits<Complex>::is_zero(a(i, i)) ? 0.0 : argument(a(i, i));
}

// infinity norm of Y^-1 A Y - D(A_C) mu(A)
inline double witness_defect(const ComplexMatrix& a, const std::vector<Complex>& gamma) {
  const std::size_t n = a.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex phase = unit(diag_argument(a, i));
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = a(i, j) * gamma[j] / gamma[i];
      const double mu = i == j ? std::abs(a(i, j)) : -std::abs(a(i, j));
      row += std::abs(g - phase * mu);
    }
    worst = std::max(worst, row);
  }
  return worst;
}

}  // namespace detail

struct NullVector {
  std::vector<Complex> values;
  double residual = 0.0;
};

inline NullVector right_null_vector(const ComplexMatrix& block, const AngleAssignment& assign,
                                    const Tolerances& tol = {}) {
  const std::size_t n = block.size();
  if (assign.thetas.size() != n) throw Error(Errc::DimensionMismatch, "assignment length differs from block size");
  NullVector out{assign.gamma(), 0.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) s += block(i, j) * out.values[j];
    worst = std::max(worst, std::abs(s));
  }
  out.residual = detail::relative(worst, max_row_modulus_sum(block));
  detail::check_residual("right null vector", out.residual, tol.tol_res);
  return out;
}

struct LeftNullVector {
  std::vector<Complex> rho;
  std::vector<double> p;  // left null vector of mu(A), p[anchor] = 1
  double residual = 0.0;
};

inline LeftNullVector left_null_vector(const ComplexMatrix& block, const std::vector<Complex>& gamma,
                                       const Tolerances& tol = {}, std::size_t anchor = 0) {
  const std::size_t n = block.size();
  if (gamma.size() != n) throw Error(Errc::DimensionMismatch, "gamma length differs from block size");
  if (anchor >= n) throw Error(Errc::InvalidArgument, "anchor out of range");
  const RealMatrix mu = comparison_matrix(block);

  // p^T mu = 0 with p[anchor] = 1: drop row and column `anchor` of mu^T.
  std::vector<double> p(n, 1.0);
  if (n > 1) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k)
      if (k != anchor) rest.push_back(k);
    RealMatrix sys(n - 1);
    std::vector<double> rhs(n - 1);
    for (std::size_t r = 0; r < rest.size(); ++r) {
      for (std::size_t c = 0; c < rest.size(); ++c) sys(r, c) = mu(rest[c], rest[r]);
      rhs[r] = -mu(anchor, rest[r]);
    }
    const double floor = 1e-14 * max_row_modulus_sum(block);
    auto x = detail::solve_dense(std::move(sys), std::move(rhs), floor);
    if (!x) throw Error(Errc::NonPositiveWeight, "comparison matrix has no positive left null vector");
    for (std::size_t r = 0; r < rest.size(); ++r) p[rest[r]] = (*x)[r];
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!(p[k] > 0.0))
      throw Error(Errc::NonPositiveWeight, "left null vector of the comparison matrix is not positive");

  LeftNullVector out;
  out.p = p;
  out.rho.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.rho[i] = p[i] * unit(-detail::diag_argument(block, i)) / gamma[i];

  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += out.rho[i] * block(i, j);
    worst = std::max(worst, std::abs(s));
  }
  out.residual = detail::relative(worst, detail::max_modulus(out.rho) * max_row_modulus_sum(block));
  detail::check_residual("left null vector", out.residual, tol.tol_res);
  return out;
}

struct UnitaryWitness {
  std::vector<Complex> gamma;
  RealMatrix mu;
  double residual = 0.0;             // Y^-1 A Y against D(A_C) mu(A)
  double normalized_residual = 0.0;  // Y^-1 D^-1(A) A Y against mu(D^-1(A) A)
};

inline UnitaryWitness unitary_witness(const ComplexMatrix& block, const std::vector<Complex>& gamma,
                                      const Tolerances& tol = {}) {
  const std::size_t n = block.size();
  if (gamma.size() != n) throw Error(Errc::DimensionMismatch, "gamma length differs from block size");
  UnitaryWitness w{gamma, comparison_matrix(block), 0.0, 0.0};
  w.residual = detail::relative(detail::witness_defect(block, gamma), max_row_modulus_sum(block));
  detail::check_residual("unitary witness", w.residual, tol.tol_res);

  bool has_zero_diag = false;
  for (std::size_t i = 0; i < n; ++i) has_zero_diag = has_zero_diag || scalar_traits<Complex>::is_zero(block(i, i));
  if (!has_zero_diag) {
    ComplexMatrix scaled = block;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scaled(i, j) = block(i, j) / block(i, i);
    // D(scaled_C) = I, so the defect is measured against mu(scaled) directly.
    w.normalized_residual = detail::relative(detail::witness_defect(scaled, gamma), max_row_modulus_sum(scaled));
    detail::check_residual("normalized unitary witness", w.normalized_residual, tol.tol_res);
  }
  return w;
}

struct MarkovDecomposition {
  std::vector<Complex> diag;
  RealMatrix S;
  double residual = 0.0;  // Y^-1 A Y against D(A)(I - S)

  bool operator==(const MarkovDecomposition&) const = default;
};

inline MarkovDecomposition markov_decomposition(const ComplexMatrix& block, const std::vector<Complex>& gamma,
                                                const Tolerances& tol = {}) {
  const std::size_t n = block.size();
  if (gamma.size() != n) throw Error(Errc::DimensionMismatch, "gamma length differs from block size");
  MarkovDecomposition md{diagonal_of(block), RealMatrix(n), 0.0};
  for (std::size_t i = 0; i < n; ++i)
    if (scalar_traits<Complex>::is_zero(md.diag[i]))
      throw Error(Errc::ZeroDiagonal, "diagonal entry " + std::to_string(i + 1) + " is zero");

  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(md.diag[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) md.S(i, j) = std::abs(block(i, j)) / d;
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = block(i, j) * gamma[j] / gamma[i];
      const Complex rhs = md.diag[i] * ((i == j ? 1.0 : 0.0) - md.S(i, j));
      row += std::abs(g - rhs);
    }
    worst = std::max(worst, row);
  }
  md.residual = detail::relative(worst, max_row_modulus_sum(block));
  detail::check_residual("Markov decomposition", md.residual, tol.tol_res);

  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += md.S(i, j);
    if (n > 1) detail::check_residual("Markov row sum", std::fabs(sum - 1.0), tol.tol_res);
  }
  return md;
}

struct BMatrix {
  RealMatrix B;
  double imag_residual = 0.0;
  double row_residual = 0.0;
  double col_residual = 0.0;

  double worst() const { return std::max({imag_residual, row_residual, col_residual}); }
};

/// B = diag(rho) A diag(gamma), checked to be real, doubly balanced and in
/// comparison-matrix sign pattern.
inline BMatrix b_matrix(const ComplexMatrix& block, const std::vector<Complex>& rho, const std::vector<Complex>& gamma,
                        const Tolerances& tol = {}) {
  const std::size_t n = block.size();
  if (rho.size() != n || gamma.size() != n) throw Error(Errc::DimensionMismatch, "certificate length mismatch");
  const double scale = detail::max_modulus(rho) * max_row_modulus_sum(block);
  BMatrix out{RealMatrix(n), 0.0, 0.0, 0.0};
  double imag = 0.0;
  std::vector<double> rows(n, 0.0), cols(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex b = rho[i] * block(i, j) * gamma[j];
      out.B(i, j) = b.real();
      imag = std::max(imag, std::fabs(b.imag()));
      rows[i] += b.real();
      cols[j] += b.real();
    }
  double row_worst = 0.0, col_worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    row_worst = std::max(row_worst, std::fabs(rows[k]));
    col_worst = std::max(col_worst, std::fabs(cols[k]));
  }
  out.imag_residual = detail::relative(imag, scale);
  out.row_residual = detail::relative(row_worst, scale);
  out.col_residual = detail::relative(col_worst, scale);
  detail::check_residual("B imaginary part", out.imag_residual, tol.tol_res);
  detail::check_residual("B row balance", out.row_residual, tol.tol_res);
  detail::check_residual("B column balance", out.col_residual, tol.tol_res);

  const double band = tol.tol_res * scale;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double b = out.B(i, j);
      const bool ok = i == j ? (n == 1 || b > 0.0) : b <= band;
      if (!ok) throw Error(Errc::ResidualTooLarge, "B violates the comparison sign pattern");
    }
  return out;
}

/// Extend a block null vector to the whole matrix: the vector on the chosen
/// independent block, zero on the other independent blocks, and each
/// dependent block solved against its coupling to earlier blocks.
inline std::vector<Complex> extend_null_vector(const ComplexMatrix& a, const FrobeniusForm& form, std::size_t block_id,
                                               const std::vector<Complex>& gamma_block, const Tolerances& tol = {}) {
  if (form.size() != a.size()) throw Error(Errc::DimensionMismatch, "form does not match matrix");
  if (block_id >= form.blocks.size() || !form.independent[block_id])
    throw Error(Errc::PreconditionViolated, "extension starts from an independent block");
  const auto& home = form.blocks[block_id];
  if (gamma_block.size() != home.size()) throw Error(Errc::DimensionMismatch, "block vector length mismatch");

  const double scale = max_row_modulus_sum(a);
  std::vector<Complex> x(a.size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < home.size(); ++k) x[home[k]] = gamma_block[k];

  for (std::size_t p = form.independent_count; p < form.blocks.size(); ++p) {
    const auto& idx = form.blocks[p];
    std::vector<Complex> rhs(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      Complex s{0.0, 0.0};
      for (std::size_t j = 0; j < a.size(); ++j)
        if (x[j] != Complex{0.0, 0.0}) s += a(idx[r], j) * x[j];
      rhs[r] = -s;
    }
    auto sol = detail::solve_dense(a.principal(idx), std::move(rhs), 1e-14 * scale);
    if (!sol) throw Error(Errc::SingularDependentBlock, "dependent block " + std::to_string(p + 1) + " is singular");
    for (std::size_t r = 0; r < idx.size(); ++r) x[idx[r]] = (*sol)[r];
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    worst = std::max(worst, std::abs(s));
  }
  detail::check_residual("extended null vector", detail::relative(worst, detail::max_modulus(x) * scale), tol.tol_res);
  return x;
}

struct SingularCertificate {
  std::size_t block = 0;  // block id in Frobenius order
  std::vector<Complex> gamma;
  std::vector<Complex> rho;
  double right_residual = 0.0;
  double left_residual = 0.0;
  std::optional<MarkovDecomposition> markov;  // absent for 1x1 blocks
  double witness_residual = 0.0;
  double normalized_witness_residual = 0.0;
  double b_residual = 0.0;
  std::vector<Complex> null_vector;  // whole-matrix null vector, original indexing

  bool operator==(const SingularCertificate&) const = default;
};

/// Full certificate for independent block `block_id` of `a` whose angle
/// system is consistent with `assign`. Throws ResidualTooLarge when any
/// witness fails its check.
inline SingularCertificate build_certificate(const ComplexMatrix& a, const FrobeniusForm& form, std::size_t block_id,
                                             const AngleAssignment& assign, const Tolerances& tol = {}) {
  const ComplexMatrix block = a.principal(form.blocks.at(block_id));
  SingularCertificate c;
  c.block = block_id;
  if (block.size() == 1) {
    // A 1x1 block is singular when its entry is negligible against the whole
    // matrix, so residuals are measured on that scale.
    const double r = detail::relative(std::abs(block(0, 0)), max_row_modulus_sum(a));
    detail::check_residual("singleton block", r, tol.tol_res);
    c.gamma = {Complex{1.0, 0.0}};
    c.rho = {Complex{1.0, 0.0}};
    c.right_residual = c.left_residual = c.b_residual = r;
    c.null_vector = extend_null_vector(a, form, block_id, c.gamma, tol);
    return c;
  }
  const auto right = right_null_vector(block, reanchor(assign, 0), tol);
  c.gamma = right.values;
  c.right_residual = right.residual;
  const auto left = left_null_vector(block, c.gamma, tol);
  c.rho = left.rho;
  c.left_residual = left.residual;
  const auto w = unitary_witness(block, c.gamma, tol);
  c.witness_residual = w.residual;
  c.normalized_witness_residual = w.normalized_residual;
  c.markov = markov_decomposition(block, c.gamma, tol);
  c.b_residual = b_matrix(block, c.rho, c.gamma, tol).worst();
  c.null_vector = extend_null_vector(a, form, block_id, c.gamma, tol);
  return c;
}

}  // namespace ddsing
