#pragma once

// The decision pipeline: applicability, optional weight scaling, Frobenius
// reduction, per-block decision and aggregation.
//
// A dominant matrix is singular iff one of its independent Frobenius blocks
// is. Dependent blocks are always nonsingular: their coupling rows are strict
// inside the block and the block is irreducible. An independent block with a
// strict row is nonsingular (Taussky); an all-weak one is singular iff its
// angle system is consistent.

#include "ddsing/angle_system.hpp"
#include "ddsing/certificates.hpp"
#include "ddsing/digraph.hpp"
#include "ddsing/dominance.hpp"
#include "ddsing/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ddsing {

enum class BlockReason { None, StrictRow, AngleInconsistent, DependentBlock };

inline const char* to_string(BlockReason r) {
  switch (r) {
    case BlockReason::None: return "none";
    case BlockReason::StrictRow: return "strict_row";
    case BlockReason::AngleInconsistent: return "angle_inconsistent";
    case BlockReason::DependentBlock: return "dependent_block";
  }
  return "?";
}

struct BlockVerdict {
  std::size_t id = 0;  // position in Frobenius block order
  bool independent = true;
  std::vector<std::size_t> indices;  // original row/column indices
  bool singular = false;
  BlockReason reason = BlockReason::None;  // None iff singular
  std::vector<RowClass> dominance;         // block-local row classes
  std::optional<AngleAssignment> assignment;
  std::optional<ConsistencyReport> angle_report;
  std::optional<std::size_t> certificate;  // index into MatrixVerdict::certificates
  std::string certificate_error;

  std::size_t size() const { return indices.size(); }
  bool operator==(const BlockVerdict&) const = default;
};

struct MatrixVerdict {
  bool applicable = false;
  std::vector<std::size_t> violated_rows;
  bool singular = false;
  std::size_t nullity = 0;
  bool exact = false;
  bool weighted = false;
  std::optional<FrobeniusForm> form;
  std::vector<BlockVerdict> blocks;
  std::vector<SingularCertificate> certificates;
  Tolerances tolerances;

  bool operator==(const MatrixVerdict&) const = default;
};

namespace detail {

template <class T>
std::vector<RowClass> block_local_classes(const Matrix<T>& block, const Tolerances& tol) {
  std::vector<RowClass> out;
  for (const auto& r : classify_rows(block, tol).rows) out.push_back(r.cls);
  return out;
}

/// Decide an irreducible block with no off-block mass. `singleton_scale`
/// is the magnitude a 1x1 entry is compared against.
template <class T>
void decide_independent(const Matrix<T>& block, const Tolerances& tol, double singleton_scale, BlockVerdict& bv) {
  using Tr = scalar_traits<T>;
  if (block.size() == 1) {
    bool zero;
    if constexpr (is_exact_v<T>)
      zero = Tr::is_zero(block(0, 0));
    else
      zero = Tr::modulus(block(0, 0)) <= tol.tol_dom * singleton_scale;
    bv.singular = zero;
    bv.reason = zero ? BlockReason::None : BlockReason::StrictRow;
    if (zero) bv.assignment = AngleAssignment{{0.0}, 0};
    return;
  }
  for (auto c : bv.dominance)
    if (c == RowClass::Strict) {
      bv.singular = false;
      bv.reason = BlockReason::StrictRow;
      return;
    }
  if constexpr (is_exact_v<T>) {
    const auto res = solve_real_signs(block);
    bv.singular = res.consistent();
    if (res.consistent()) {
      bv.assignment = AngleAssignment{res.signs->thetas(), 0};
    } else {
      ConsistencyReport rep;
      for (auto [i, j] : res.violations) rep.violations.push_back({i, j, std::numbers::pi, false});
      rep.max_residual = std::numbers::pi;
      bv.angle_report = rep;
    }
  } else {
    auto res = solve_angle_system(block, tol);
    bv.singular = res.consistent();
    bv.assignment = res.assignment;
    bv.angle_report = res.report;
  }
  bv.reason = bv.singular ? BlockReason::None : BlockReason::AngleInconsistent;
}

}  // namespace detail

/// Verdict for a single irreducible block taken on its own.
template <class T>
BlockVerdict block_verdict(const Matrix<T>& block, const Tolerances& tol = {}) {
  if (!is_irreducible(block)) throw Error(Errc::PreconditionViolated, "block is not irreducible");
  BlockVerdict bv;
  for (std::size_t i = 0; i < block.size(); ++i) bv.indices.push_back(i);
  bv.dominance = detail::block_local_classes(block, tol);
  for (auto c : bv.dominance)
    if (c == RowClass::Violated) throw Error(Errc::NotApplicable, "block is not diagonally dominant");
  detail::decide_independent(block, tol, max_row_modulus_sum(block), bv);
  return bv;
}

/// Full pipeline. With `weights`, the matrix analyzed is A diag(weights),
/// which is singular exactly when A is; certificate null vectors are mapped
/// back so they annihilate A itself.
template <class T>
MatrixVerdict analyze(const Matrix<T>& input, const Tolerances& tol = {},
                      const std::optional<std::vector<real_of_t<T>>>& weights = std::nullopt,
                      bool with_certificates = true) {
  tol.validate();
  MatrixVerdict v;
  v.tolerances = tol;
  v.exact = is_exact_v<T>;
  v.weighted = weights.has_value();
  const Matrix<T> a = weights ? scale_columns(input, *weights) : input;

  v.violated_rows = classify_rows(a, tol).violated_rows();
  v.applicable = v.violated_rows.empty();
  if (!v.applicable) return v;

  const FrobeniusForm form = frobenius_normal_form(a);
  const double scale = max_row_modulus_sum(a);
  std::optional<ComplexMatrix> as_complex;

  for (std::size_t p = 0; p < form.blocks.size(); ++p) {
    BlockVerdict bv;
    bv.id = p;
    bv.independent = form.independent[p];
    bv.indices = form.blocks[p];
    const Matrix<T> block = a.principal(bv.indices);
    bv.dominance = detail::block_local_classes(block, tol);
    if (!bv.independent) {
      bv.singular = false;
      bv.reason = BlockReason::DependentBlock;
    } else {
      detail::decide_independent(block, tol, scale, bv);
    }

    if (bv.singular) {
      ++v.nullity;
      if (with_certificates) {
        if (!as_complex) {
          if constexpr (std::is_same_v<T, Complex>)
            as_complex = a;
          else
            as_complex = to_complex(a);
        }
        try {
          auto cert = build_certificate(*as_complex, form, p, *bv.assignment, tol);
          if (weights)
            for (std::size_t j = 0; j < cert.null_vector.size(); ++j)
              cert.null_vector[j] *= static_cast<double>((*weights)[j]);
          bv.certificate = v.certificates.size();
          v.certificates.push_back(std::move(cert));
        } catch (const Error& e) {
          bv.certificate_error = e.what();
        }
      }
    }
    v.blocks.push_back(std::move(bv));
  }
  v.singular = v.nullity > 0;
  v.form = form;
  return v;
}

inline std::size_t nullity_of(const MatrixVerdict& v) {
  if (!v.applicable) throw Error(Errc::NotApplicable, "matrix is not diagonally dominant; no verdict");
  return v.nullity;
}

}  // namespace ddsing
