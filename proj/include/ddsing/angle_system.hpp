#pragma once

// The angle equation system of an irreducible weakly dominant block.
//
// For every nonzero off-diagonal a_ij the unknown vertex angles must satisfy
//
//   theta_j = pi + arg(a_ii) - arg(a_ij) + theta_i   (mod 2pi).
//
// The block is singular exactly when the system is consistent. Values are
// propagated breadth-first from an anchor fixed at 0, then every edge is
// re-checked so that cycles with a nonzero angle sum are reported.

#include "ddsing/digraph.hpp"
#include "ddsing/dominance.hpp"
#include "ddsing/matrix.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <vector>

namespace ddsing {

/// Wraparound distance between two angles, in [0, pi].
inline double angle_distance(double x, double y) {
  const double m = reduce_angle(x - y);
  return std::min(m, kTwoPi - m);
}

struct AngleAssignment {
  std::vector<double> thetas;  // each in [0, 2pi)
  std::size_t anchor = 0;

  std::vector<Complex> gamma() const {
    std::vector<Complex> g;
    g.reserve(thetas.size());
    for (double t : thetas) g.push_back(unit(t));
    return g;
  }

  bool operator==(const AngleAssignment&) const = default;
};

struct EdgeViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  double residual = 0.0;
  bool marginal = false;  // residual within 10 * tol_angle

  bool operator==(const EdgeViolation&) const = default;
};

struct ConsistencyReport {
  double max_residual = 0.0;
  std::vector<EdgeViolation> violations;

  bool consistent() const { return violations.empty(); }
  bool operator==(const ConsistencyReport&) const = default;
};

struct AngleSolveResult {
  std::optional<AngleAssignment> assignment;  // set iff consistent
  ConsistencyReport report;

  bool consistent() const { return assignment.has_value(); }
};

namespace detail {

template <class T>
void require_weak_irreducible(const Matrix<T>& block, const Tolerances& tol, std::size_t anchor) {
  if (anchor >= block.size()) throw Error(Errc::PreconditionViolated, "anchor out of range");
  const auto profile = classify_rows(block, tol);
  if (!profile.all_weak()) throw Error(Errc::PreconditionViolated, "angle system needs every row weakly dominant");
  if (!is_irreducible(block)) throw Error(Errc::PreconditionViolated, "angle system needs an irreducible block");
  for (std::size_t i = 0; i < block.size(); ++i)
    if (scalar_traits<T>::is_zero(block(i, i)))
      throw Error(Errc::PreconditionViolated, "angle system needs nonzero diagonal entries");
}

}  // namespace detail

inline AngleSolveResult solve_angle_system(const ComplexMatrix& block, const Tolerances& tol = {},
                                           std::size_t anchor = 0) {
  detail::require_weak_irreducible(block, tol, anchor);
  const std::size_t n = block.size();
  const Digraph g = associated_digraph(block);
  const PolarSplit polar = polar_split(block);

  auto target = [&](std::size_t i, std::size_t j, double theta_i) {
    return std::numbers::pi + *polar.args(i, i) - *polar.args(i, j) + theta_i;
  };

  std::vector<double> thetas(n, 0.0);
  std::vector<bool> assigned(n, false);
  std::queue<std::size_t> frontier;
  assigned[anchor] = true;
  frontier.push(anchor);
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop();
    for (auto j : g.adjacency[i]) {
      if (assigned[j]) continue;
      thetas[j] = reduce_angle(target(i, j, thetas[i]));
      assigned[j] = true;
      frontier.push(j);
    }
  }

  AngleSolveResult out;
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : g.adjacency[i]) {
      const double r = angle_distance(thetas[j], target(i, j, thetas[i]));
      out.report.max_residual = std::max(out.report.max_residual, r);
      if (r > tol.tol_angle) out.report.violations.push_back({i, j, r, r <= 10.0 * tol.tol_angle});
    }
  if (out.report.consistent()) out.assignment = AngleAssignment{std::move(thetas), anchor};
  return out;
}

/// Rotate every angle by beta (mod 2pi). Edge equations are invariant
/// under a common rotation.
inline AngleAssignment normalize_assignment(const AngleAssignment& assign, double beta_angle) {
  AngleAssignment out = assign;
  for (auto& t : out.thetas) t = reduce_angle(t + beta_angle);
  return out;
}

/// Rotate so that vertex `anchor` sits at angle 0.
inline AngleAssignment reanchor(const AngleAssignment& assign, std::size_t anchor) {
  AngleAssignment out = normalize_assignment(assign, -assign.thetas.at(anchor));
  out.thetas[anchor] = 0.0;
  out.anchor = anchor;
  return out;
}

struct RealSignVector {
  std::vector<int> signs;  // +1 or -1

  std::vector<double> thetas() const {
    std::vector<double> t;
    for (int s : signs) t.push_back(s > 0 ? 0.0 : std::numbers::pi);
    return t;
  }

  bool operator==(const RealSignVector&) const = default;
};

struct RealSignResult {
  std::optional<RealSignVector> signs;  // set iff consistent
  std::vector<std::pair<std::size_t, std::size_t>> violations;

  bool consistent() const { return signs.has_value(); }
};

/// Sign propagation on an exact real block:
/// sign(gamma_j) = -sign(a_ii) * sign(a_ij) * sign(gamma_i). No tolerance.
inline RealSignResult solve_real_signs(const RationalMatrix& block, std::size_t anchor = 0) {
  detail::require_weak_irreducible(block, Tolerances{}, anchor);
  const std::size_t n = block.size();
  const Digraph g = associated_digraph(block);
  auto sgn = [](const Rational& x) { return x > 0 ? 1 : -1; };
  auto target = [&](std::size_t i, std::size_t j, int s_i) { return -sgn(block(i, i)) * sgn(block(i, j)) * s_i; };

  std::vector<int> signs(n, 0);
  signs[anchor] = 1;
  std::queue<std::size_t> frontier;
  frontier.push(anchor);
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop();
    for (auto j : g.adjacency[i]) {
      if (signs[j] != 0) continue;
      signs[j] = target(i, j, signs[i]);
      frontier.push(j);
    }
  }

  RealSignResult out;
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : g.adjacency[i])
      if (signs[j] != target(i, j, signs[i])) out.violations.emplace_back(i, j);
  if (out.violations.empty()) out.signs = RealSignVector{std::move(signs)};
  return out;
}

}  // namespace ddsing
