// Acceptance run: one PASS/FAIL line per criterion. Every residual below is
// recomputed from A and the returned vectors; certificate fields are not
// trusted.

#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <type_traits>
#include <numbers>
#include <string>

using namespace ddsing;
using ddsing::testing::inf_norm;
using ddsing::testing::mat_vec;
using ddsing::testing::rotation_gap;

namespace {

// pinned tolerances
constexpr double kPivotTol = 1e-10;
constexpr double kTolAngle = 1e-9;
constexpr double kResidual = 1e-10;
constexpr double kGammaRad = 1e-8;
constexpr double kMarkovRow = 1e-12;
constexpr double kAnchorGap = 2e-9;
constexpr double kRuntimeSec = 60.0;

constexpr std::size_t kPerFamily = 600;  // 4 families -> 2400 instances
constexpr std::size_t kStrictCount = 500;
constexpr std::size_t kReducibleCount = 500;
constexpr std::size_t kRationalCount = 500;
constexpr std::size_t kAnchorCount = 500;
constexpr std::size_t kScaledCount = 200;

const Tolerances kTol{1e-10, kTolAngle, 1e-8};

struct Outcome {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures++ == 0) note = what;
  }
};

int report(int id, const char* title, const Outcome& o, const std::string& extra = {}) {
  const bool pass = o.failures == 0 && o.checked > 0;
  std::printf("%s criterion %d: %s [%zu checked, %zu failed%s%s]%s%s\n", pass ? "PASS" : "FAIL", id, title, o.checked,
              o.failures, extra.empty() ? "" : ", ", extra.c_str(), o.note.empty() ? "" : " first failure: ",
              o.note.c_str());
  return pass ? 0 : 1;
}

std::string tag(const char* family, std::uint64_t seed) { return std::string(family) + " seed " + std::to_string(seed); }

struct Instance {
  std::string name;
  ComplexMatrix A;
  std::optional<std::vector<Complex>> planted_gamma;
};

std::vector<Instance> oracle_corpus() {
  std::vector<Instance> out;
  for (std::uint64_t s = 0; s < kPerFamily; ++s) {
    const std::size_t n = 2 + s % 7;
    const auto inst = gen_singular_instance(n, 0.5, 1000 + s);
    out.push_back({tag("planted", s), inst.A, inst.gamma});
  }
  for (std::uint64_t s = 0; s < kPerFamily; ++s) {
    const std::size_t n = 2 + s % 7;
    // log-uniform delta over [1e-6, pi]
    const double t = double(s) / double(kPerFamily - 1);
    const double delta = std::min(std::numbers::pi, std::exp(std::log(1e-6) + t * (std::log(std::numbers::pi) - std::log(1e-6))));
    out.push_back({tag("perturbed", s), gen_perturbed_instance(gen_singular_instance(n, 0.5, 2000 + s), delta), {}});
  }
  for (std::uint64_t s = 0; s < kPerFamily; ++s)
    out.push_back({tag("strict", s), gen_strict_instance(1 + s % 8, 0.5, 3000 + s), {}});
  for (std::uint64_t s = 0; s < kPerFamily; ++s) out.push_back({tag("reducible", s), gen_reducible_instance(4000 + s, 8).A, {}});
  return out;
}

std::vector<Complex> left_apply(const std::vector<Complex>& rho, const ComplexMatrix& a) {
  std::vector<Complex> y(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i) y[j] += rho[i] * a(i, j);
  return y;
}

// Criteria 1, 2 and 5 share one pass over the oracle corpus.
struct CorpusResult {
  Outcome oracle, residuals, witnesses;
  double seconds = 0.0;
  std::size_t singular = 0, nonsingular = 0;
};

CorpusResult run_corpus() {
  CorpusResult r;
  const auto corpus = oracle_corpus();
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& inst : corpus) {
    const auto& a = inst.A;
    const double scale = max_row_modulus_sum(a);
    const auto v = analyze(a, kTol);
    const auto o = rank_det_oracle(a, kPivotTol);
    ++r.oracle.checked;
    r.oracle.expect(v.applicable && v.singular == o.singular(a.size()) && v.nullity == a.size() - o.rank,
                    inst.name + ": analyzer/oracle disagree");
    (v.singular ? r.singular : r.nonsingular)++;

    for (const auto& b : v.blocks) {
      if (!b.singular) continue;
      ++r.residuals.checked;
      r.residuals.expect(b.certificate.has_value(), inst.name + ": no certificate (" + b.certificate_error + ")");
      if (!b.certificate) continue;
      const auto& c = v.certificates[*b.certificate];
      const auto block = a.principal(b.indices);

      const double right = inf_norm(mat_vec(block, c.gamma));
      const double left = inf_norm(left_apply(c.rho, block));
      const double whole = inf_norm(mat_vec(a, c.null_vector));
      r.residuals.expect(right <= kResidual * scale, inst.name + ": |A gamma| too large");
      r.residuals.expect(left <= kResidual * scale * inf_norm(c.rho), inst.name + ": |rho A| too large");
      r.residuals.expect(whole <= kResidual * scale * inf_norm(c.null_vector), inst.name + ": |A x| too large");
      if (inst.planted_gamma)
        r.residuals.expect(rotation_gap(c.gamma, *inst.planted_gamma) <= kGammaRad, inst.name + ": planted gamma missed");

      if (block.size() == 1) continue;
      ++r.witnesses.checked;
      const std::size_t m = block.size();
      const double bscale = max_row_modulus_sum(block);
      const double rscale = inf_norm(c.rho) * bscale;
      double unitary = 0.0, markov = 0.0, imag = 0.0;
      std::vector<double> rows(m, 0.0), cols(m, 0.0);
      r.witnesses.expect(c.markov.has_value(), inst.name + ": Markov form missing");
      if (!c.markov) continue;
      for (std::size_t i = 0; i < m; ++i) {
        const Complex d = block(i, i);
        const Complex dc = d / std::abs(d);
        double srow = 0.0, urow = 0.0, mrow = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const Complex sim = block(i, j) * c.gamma[j] / c.gamma[i];
          const double mu = i == j ? std::abs(block(i, j)) : -std::abs(block(i, j));
          const double s = c.markov->S(i, j);
          urow += std::abs(sim - dc * mu);
          mrow += std::abs(sim - d * ((i == j ? 1.0 : 0.0) - s));
          r.witnesses.expect(s >= -kMarkovRow, inst.name + ": negative S entry");
          srow += s;
          const Complex bij = c.rho[i] * block(i, j) * c.gamma[j];
          imag = std::max(imag, std::fabs(bij.imag()));
          rows[i] += bij.real();
          cols[j] += bij.real();
        }
        unitary = std::max(unitary, urow);
        markov = std::max(markov, mrow);
        r.witnesses.expect(std::fabs(srow - 1.0) <= kMarkovRow, inst.name + ": S row sum off 1");
      }
      r.witnesses.expect(unitary <= kResidual * bscale, inst.name + ": unitary witness residual");
      r.witnesses.expect(markov <= kResidual * bscale, inst.name + ": Markov residual");
      r.witnesses.expect(imag <= kResidual * rscale, inst.name + ": B not real");
      for (std::size_t k = 0; k < m; ++k) {
        r.witnesses.expect(std::fabs(rows[k]) <= kResidual * rscale, inst.name + ": B row sum");
        r.witnesses.expect(std::fabs(cols[k]) <= kResidual * rscale, inst.name + ": B column sum");
      }
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.oracle.expect(r.seconds < kRuntimeSec, "runtime " + std::to_string(r.seconds) + " s");
  return r;
}

Outcome strict_shortcut() {
  Outcome o;
  for (std::uint64_t s = 0; s < kStrictCount; ++s) {
    const std::size_t n = 2 + s % 15;
    const auto a = gen_strict_instance(n, 0.4, 5000 + s);
    const auto name = tag("strict", s);
    ++o.checked;
    o.expect(is_irreducible(a), name + ": generator gave a reducible matrix");
    const auto v = analyze(a, kTol);
    o.expect(v.applicable && !v.singular && v.blocks.size() == 1 && v.blocks[0].reason == BlockReason::StrictRow,
             name + ": not Nonsingular{StrictRow}");
    const auto orc = rank_det_oracle(a, kPivotTol);
    o.expect(orc.rank == n && std::abs(orc.det) > 0.0, name + ": oracle says singular");
  }
  return o;
}

Outcome frobenius_reduction() {
  Outcome o;
  for (std::uint64_t s = 0; s < kReducibleCount; ++s) {
    const auto inst = gen_reducible_instance(6000 + s, 8);
    const auto name = tag("reducible", s);
    const auto v = analyze(inst.A, kTol);
    ++o.checked;
    o.expect(v.applicable, name + ": not applicable");
    for (const auto& b : v.blocks) {
      if (b.independent) continue;
      const auto orc = rank_det_oracle(inst.A.principal(b.indices), kPivotTol);
      o.expect(!b.singular && b.reason == BlockReason::DependentBlock, name + ": dependent block not DependentBlock");
      o.expect(orc.rank == b.size() && std::abs(orc.det) > 0.0, name + ": dependent block singular per oracle");
    }
    o.expect(v.nullity == inst.A.size() - rank_det_oracle(inst.A, kPivotTol).rank, name + ": nullity != n - rank");
  }
  return o;
}

Outcome exact_mode() {
  Outcome o;
  for (std::uint64_t s = 0; s < kRationalCount; ++s) {
    const auto r = gen_rational_weak_instance(2 + s % 7, 0.5, 7000 + s, s % 2 == 0);
    const auto name = tag("rational", s);
    ++o.checked;
    const auto exact = solve_real_signs(r);
    const auto again = solve_real_signs(r);
    const auto fl = solve_angle_system(to_complex(r), kTol);
    o.expect(exact.signs == again.signs && exact.violations == again.violations, name + ": exact run not deterministic");
    o.expect(exact.consistent() == fl.consistent(), name + ": consistency differs");
    if (exact.consistent() && fl.consistent())
      for (std::size_t k = 0; k < r.size(); ++k) {
        const double t = fl.assignment->thetas[k];
        const int fsign = angle_distance(t, 0.0) <= kTolAngle ? 1 : angle_distance(t, std::numbers::pi) <= kTolAngle ? -1 : 0;
        o.expect(fsign == exact.signs->signs[k], name + ": sign differs at " + std::to_string(k + 1));
      }
    const auto v = analyze(r, kTol);
    o.expect(v.singular == (exact_rank_det(r).det == 0), name + ": exact verdict differs from exact determinant");
  }
  return o;
}

Outcome anchor_invariance() {
  Outcome o;
  for (std::uint64_t s = 0; s < kAnchorCount; ++s) {
    const std::size_t n = 2 + s % 7;
    const auto inst = gen_singular_instance(n, 0.5, 8000 + s);
    const auto name = tag("planted", s);
    Rng rng(8000 + s);
    const std::size_t k = detail::uniform_index(rng, 1, n - 1);
    ++o.checked;
    const auto a0 = solve_angle_system(inst.A, kTol, 0);
    const auto ak = solve_angle_system(inst.A, kTol, k);
    o.expect(a0.consistent() && ak.consistent(), name + ": inconsistent");
    if (!a0.consistent() || !ak.consistent()) continue;
    // normalize both to theta_k = 0
    double gap = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      gap = std::max(gap, angle_distance(a0.assignment->thetas[j] - a0.assignment->thetas[k],
                                         ak.assignment->thetas[j] - ak.assignment->thetas[k]));
    o.expect(gap <= kAnchorGap, name + ": gap " + std::to_string(gap));
  }
  return o;
}

Outcome generalized_path() {
  Outcome o;
  for (std::uint64_t s = 0; s < kScaledCount; ++s) {
    const auto inst = gen_scaled_instance(2 + s % 7, 9000 + s);
    const auto name = tag("scaled", s);
    ++o.checked;
    const auto w = analyze(inst.A, kTol, inst.weights);
    const auto d = analyze(scale_columns(inst.A, inst.weights), kTol);
    o.expect(w.applicable && d.applicable && w.singular == d.singular && w.nullity == d.nullity,
             name + ": weighted verdict differs");
  }
  return o;
}

// An exception inside a criterion counts as a failure of that criterion.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    decltype(f()) r{};
    if constexpr (std::is_same_v<decltype(r), Outcome>) {
      r.checked = 1;
      r.expect(false, std::string("exception: ") + e.what());
    } else {
      for (Outcome* o : {&r.oracle, &r.residuals, &r.witnesses}) {
        o->checked = 1;
        o->expect(false, std::string("exception: ") + e.what());
      }
    }
    return r;
  }
}

}  // namespace

int main() {
  int failed = 0;
  const auto corpus = guarded(run_corpus);
  char extra[128];
  std::snprintf(extra, sizeof extra, "%zu singular, %zu nonsingular, %.2f s", corpus.singular, corpus.nonsingular,
                corpus.seconds);
  failed += report(1, "oracle equivalence", corpus.oracle, extra);
  failed += report(2, "certificate residuals and planted gamma recovery", corpus.residuals);
  failed += report(3, "strict-row shortcut", guarded(strict_shortcut));
  failed += report(4, "Frobenius reduction and nullity", guarded(frobenius_reduction));
  failed += report(5, "decomposition witnesses", corpus.witnesses);
  failed += report(6, "exact real mode", guarded(exact_mode));
  failed += report(7, "anchor invariance", guarded(anchor_invariance));
  failed += report(8, "generalized dominance path", guarded(generalized_path));
  return failed == 0 ? 0 : 1;
}
