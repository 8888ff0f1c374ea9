#pragma once

// Seeded instance generators for tests, the acceptance suite and `ddsing gen`.
// Every instance is reproducible from its arguments.

#include "ddsing/digraph.hpp"
#include "ddsing/dominance.hpp"
#include "ddsing/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ddsing {

using Rng = std::mt19937_64;

namespace detail {

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline double random_phase(Rng& rng) { return uniform(rng, 0.0, kTwoPi); }

/// Off-diagonal moduli with a strongly connected support, drawn entrywise
/// with probability `density`; retried until the support is strongly
/// connected.
inline RealMatrix random_support(std::size_t n, double density, Rng& rng, double lo, double hi,
                                 std::size_t max_retries = 1000) {
  if (n == 1) return RealMatrix(1);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    RealMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && coin(rng, density)) m(i, j) = uniform(rng, lo, hi);
    if (is_irreducible(m)) return m;
  }
  throw Error(Errc::DegenerateSupport, "no strongly connected support after " + std::to_string(max_retries) +
                                           " draws (n = " + std::to_string(n) + ", density = " +
                                           std::to_string(density) + ")");
}

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace detail

struct PlantedInstance {
  ComplexMatrix A;
  std::vector<Complex> gamma;       // planted null vector, unit moduli
  RealMatrix mu_seed;               // exactly row-balanced comparison-form seed
  std::vector<Complex> diag_phase;  // D_C
};

/// A = Y D_C mu Y^-1 with Y = diag(gamma). Requires mu in comparison form
/// with zero row sums; then A gamma = 0.
inline PlantedInstance plant(const RealMatrix& mu_seed, std::vector<Complex> gamma, std::vector<Complex> diag_phase) {
  const std::size_t n = mu_seed.size();
  if (gamma.size() != n || diag_phase.size() != n) throw Error(Errc::DimensionMismatch, "phase vectors must have length n");
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = gamma[i] * diag_phase[i] * mu_seed(i, j) / gamma[j];
  return {std::move(a), std::move(gamma), mu_seed, std::move(diag_phase)};
}

struct PlantOptions {
  bool random_gamma = true;
  bool random_diag_phase = true;
  bool real = false;  // phases restricted to {0, pi}
  double min_modulus = 0.25;
  double max_modulus = 1.0;
};

/// Planted singular instance: irreducible, weakly row dominant, with null
/// vector `gamma`.
inline PlantedInstance gen_singular_instance(std::size_t n, double density, std::uint64_t seed,
                                             const PlantOptions& opts = {}) {
  if (n < 2) throw Error(Errc::InvalidArgument, "planted instances need n >= 2");
  Rng rng(seed);
  RealMatrix mu = detail::random_support(n, density, rng, opts.min_modulus, opts.max_modulus);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        sum += mu(i, j);
        mu(i, j) = -mu(i, j);
      }
    mu(i, i) = sum;
  }
  auto draw = [&](bool random) {
    std::vector<Complex> v(n, Complex{1.0, 0.0});
    if (!random) return v;
    for (auto& z : v)
      z = opts.real ? Complex{detail::coin(rng, 0.5) ? 1.0 : -1.0, 0.0} : unit(detail::random_phase(rng));
    return v;
  };
  auto gamma = draw(opts.random_gamma);
  auto phase = draw(opts.random_diag_phase);
  return plant(mu, std::move(gamma), std::move(phase));
}

/// Multiply the first nonzero off-diagonal entry (row-major) by e^{i delta}.
/// In an irreducible matrix every edge lies on a cycle, so the angle system
/// picks up a residual of delta.
inline ComplexMatrix gen_perturbed_instance(const ComplexMatrix& base, double delta) {
  if (!(delta > 0.0 && delta <= std::numbers::pi))
    throw Error(Errc::PreconditionViolated, "delta must lie in (0, pi]");
  ComplexMatrix a = base;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j && !scalar_traits<Complex>::is_zero(a(i, j))) {
        a(i, j) *= unit(delta);
        return a;
      }
  throw Error(Errc::PreconditionViolated, "no off-diagonal entry to perturb");
}

inline ComplexMatrix gen_perturbed_instance(const PlantedInstance& base, double delta) {
  return gen_perturbed_instance(base.A, delta);
}

/// Irreducible dominant instance with at least one strict row and random
/// phases on every entry.
inline ComplexMatrix gen_strict_instance(std::size_t n, double density, std::uint64_t seed) {
  Rng rng(seed);
  const RealMatrix moduli = detail::random_support(n, density, rng, 0.25, 1.0);
  const std::size_t forced = detail::uniform_index(rng, 0, n - 1);
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && moduli(i, j) > 0.0) {
        a(i, j) = std::polar(moduli(i, j), detail::random_phase(rng));
        off += moduli(i, j);
      }
    const bool strict = i == forced || detail::coin(rng, 0.5);
    const double extra = strict ? detail::uniform(rng, 0.05, 0.5) * std::max(off, 1.0) : 0.0;
    a(i, i) = std::polar(off + extra, detail::random_phase(rng));
  }
  return a;
}

/// Block lower triangular composition with known structure, randomly
/// permuted. `blocks` and `independent` describe the components in original
/// indices; `singular_blocks` lists the components built singular.
struct ReducibleInstance {
  ComplexMatrix A;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<bool> independent;
  std::vector<bool> singular;
  std::size_t expected_nullity = 0;
};

inline ReducibleInstance gen_reducible_instance(std::uint64_t seed, std::size_t max_n = 8) {
  Rng rng(seed);
  const std::size_t target = detail::uniform_index(rng, 2, std::max<std::size_t>(2, max_n));
  std::vector<std::size_t> sizes;
  for (std::size_t used = 0; used < target;) {
    std::size_t s = std::min(detail::uniform_index(rng, 1, 3), target - used);
    sizes.push_back(s);
    used += s;
  }
  if (sizes.size() == 1) {  // split so the result is reducible
    if (sizes[0] == 1) sizes.push_back(1);
    else {
      sizes[0] -= 1;
      sizes.push_back(1);
    }
  }
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});

  ComplexMatrix a(n);
  std::vector<std::size_t> start{0};
  ReducibleInstance out;
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    const std::size_t s = sizes[p];
    const std::uint64_t sub_seed = rng();
    ComplexMatrix blk(s);
    bool singular = false;
    if (s == 1) {
      singular = detail::coin(rng, 0.5);
      blk(0, 0) = singular ? Complex{0.0, 0.0} : std::polar(detail::uniform(rng, 0.5, 2.0), detail::random_phase(rng));
    } else {
      switch (detail::uniform_index(rng, 0, 2)) {
        case 0:
          blk = gen_singular_instance(s, 0.7, sub_seed).A;
          singular = true;
          break;
        case 1: {
          const double delta = std::exp(detail::uniform(rng, std::log(1e-6), std::log(std::numbers::pi)));
          blk = gen_perturbed_instance(gen_singular_instance(s, 0.7, sub_seed).A, delta);
          break;
        }
        default:
          blk = gen_strict_instance(s, 0.7, sub_seed);
      }
    }
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) a(start[p] + i, start[p] + j) = blk(i, j);

    bool dependent = p > 0 && detail::coin(rng, 0.6);
    if (dependent) {
      // couple some rows of this block into earlier blocks, keeping each
      // coupled row weakly dominant in the full matrix
      bool any = false;
      for (std::size_t i = 0; i < s; ++i) {
        if (!(detail::coin(rng, 0.6) || (i + 1 == s && !any))) continue;
        const std::size_t row = start[p] + i;
        const std::size_t col = detail::uniform_index(rng, 0, start[p] - 1);
        const double mass = detail::uniform(rng, 0.25, 1.0);
        a(row, col) = std::polar(mass, detail::random_phase(rng));
        const Complex d = a(row, row);
        a(row, row) = scalar_traits<Complex>::is_zero(d) ? std::polar(mass, detail::random_phase(rng))
                                                         : d * ((std::abs(d) + mass) / std::abs(d));
        any = true;
      }
    }
    out.independent.push_back(!dependent);
    out.singular.push_back(!dependent && singular);
    out.expected_nullity += (!dependent && singular) ? 1 : 0;
    start.push_back(start[p] + s);
  }

  const auto perm = detail::random_permutation(n, rng);
  out.A = permute(a, std::span<const std::size_t>(perm));
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    std::vector<std::size_t> idx;
    for (std::size_t k = start[p]; k < start[p + 1]; ++k) idx.push_back(perm[k]);
    std::sort(idx.begin(), idx.end());
    out.blocks.push_back(std::move(idx));
  }
  return out;
}

/// Real weakly dominant irreducible matrix with small rational entries.
/// With `planted` the signs come from a +-1 similarity of a comparison-form
/// seed (singular); otherwise every sign is random.
inline RationalMatrix gen_rational_weak_instance(std::size_t n, double density, std::uint64_t seed, bool planted) {
  Rng rng(seed);
  const RealMatrix support = detail::random_support(n, density, rng, 0.5, 1.0);
  auto sign = [&] { return detail::coin(rng, 0.5) ? 1 : -1; };
  std::vector<int> s(n), d(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = sign(), d[i] = sign();
  RationalMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational off{0};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || support(i, j) == 0.0) continue;
      const Rational m(static_cast<long>(detail::uniform_index(rng, 1, 9)),
                       static_cast<long>(detail::uniform_index(rng, 1, 6)));
      off += m;
      a(i, j) = planted ? Rational(-s[i] * d[i] * s[j]) * m : Rational(sign()) * m;
    }
    a(i, i) = Rational(d[i]) * off;
  }
  return a;
}

struct ScaledInstance {
  ComplexMatrix A;             // generalized dominant: A diag(v) is dominant
  std::vector<double> weights;  // v
};

/// A = M diag(v)^-1 for a dominant M (planted singular, perturbed or strict
/// by seed) and random positive weights.
inline ScaledInstance gen_scaled_instance(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const std::uint64_t sub = rng();
  ComplexMatrix m;
  switch (detail::uniform_index(rng, 0, 2)) {
    case 0: m = gen_singular_instance(n, 0.6, sub).A; break;
    case 1: m = gen_perturbed_instance(gen_singular_instance(n, 0.6, sub).A, detail::uniform(rng, 1e-3, 3.0)); break;
    default: m = gen_strict_instance(n, 0.6, sub);
  }
  ScaledInstance out{m, std::vector<double>(n)};
  for (auto& v : out.weights) v = std::exp(detail::uniform(rng, std::log(0.2), std::log(5.0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.A(i, j) = m(i, j) / out.weights[j];
  return out;
}

enum class FixtureKind { Laplacian, Kolmogorov, MarkovM };

/// Network Laplacian from nonnegative off-diagonal weights: off-diagonal
/// entries are the weights, each diagonal entry is minus its row's weight
/// sum.
inline ComplexMatrix laplacian_from(const RealMatrix& weights) {
  const std::size_t n = weights.size();
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        if (weights(i, j) < 0.0) throw Error(Errc::InvalidArgument, "Laplacian weights must be nonnegative");
        g(i, j) = weights(i, j);
        sum += weights(i, j);
      }
    g(i, i) = -sum;
  }
  return g;
}

/// Q - I for a row-stochastic Q.
inline ComplexMatrix kolmogorov_from(const RealMatrix& q) {
  ComplexMatrix g = to_complex(q);
  for (std::size_t i = 0; i < q.size(); ++i) g(i, i) -= 1.0;
  return g;
}

/// I - S for a Markov matrix S.
inline ComplexMatrix markov_m_from(const RealMatrix& s) {
  ComplexMatrix g = to_complex(s);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) g(i, j) = (i == j ? 1.0 : 0.0) - s(i, j);
  return g;
}

inline ComplexMatrix gen_fixture(FixtureKind kind, std::size_t n, std::uint64_t seed, double density = 0.5) {
  if (n == 0) throw Error(Errc::InvalidArgument, "n must be >= 1");
  Rng rng(seed);
  RealMatrix w = detail::random_support(n, density, rng, 0.1, 1.0);
  // row-normalized copy, used as the off-diagonal part of a stochastic matrix
  auto stochastic = [&](bool zero_diag) {
    RealMatrix q(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += w(i, j);
      const double stay = zero_diag ? 0.0 : detail::uniform(rng, 0.0, 0.9);
      if (sum == 0.0) {
        q(i, i) = 1.0;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) q(i, j) = (1.0 - stay) * w(i, j) / sum;
      q(i, i) = stay;
    }
    return q;
  };
  switch (kind) {
    case FixtureKind::Laplacian: return laplacian_from(w);
    case FixtureKind::Kolmogorov: return kolmogorov_from(stochastic(false));
    case FixtureKind::MarkovM: return markov_m_from(stochastic(true));
  }
  return laplacian_from(w);
}

}  // namespace ddsing
