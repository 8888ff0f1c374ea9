#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace ddsing;
using ddsing::testing::cplx;
using ddsing::testing::leibniz_det;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ddsing::Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("matrix construction enforces a square shape", "[matrix]") {
  CHECK(code_of([] { ComplexMatrix(0); }) == Errc::DimensionMismatch);
  CHECK(code_of([] { ComplexMatrix(2, std::vector<Complex>(3)); }) == Errc::DimensionMismatch);
  CHECK(code_of([] { RealMatrix{{1.0, 2.0}, {3.0}}; }) == Errc::DimensionMismatch);
  const auto id = ComplexMatrix::identity(3);
  CHECK(id(1, 1) == Complex{1.0, 0.0});
  CHECK(id(0, 2) == Complex{0.0, 0.0});
}

TEST_CASE("tolerances must be positive and below 0.1", "[matrix]") {
  CHECK_NOTHROW(Tolerances{}.validate());
  CHECK(code_of([] { Tolerances{0.0, 1e-9, 1e-8}.validate(); }) == Errc::InvalidArgument);
  CHECK(code_of([] { Tolerances{1e-10, 0.5, 1e-8}.validate(); }) == Errc::InvalidArgument);
}

TEST_CASE("arguments are reduced to [0, 2pi)", "[matrix]") {
  CHECK(argument({1.0, 0.0}) == 0.0);
  CHECK(argument({1.0, -0.0}) == 0.0);
  CHECK_THAT(argument({-1.0, -0.0}), WithinAbs(pi, 1e-15));
  CHECK_THAT(argument({0.0, -1.0}), WithinAbs(3 * pi / 2, 1e-15));
  CHECK(reduce_angle(kTwoPi) == 0.0);
  CHECK(reduce_angle(-1e-300) < kTwoPi);
}

TEST_CASE("polar_split", "[matrix-core]") {
  SECTION("Pythagorean triple") {
    const auto p = polar_split(cplx({{{3.0, 4.0}}}));
    CHECK(p.moduli(0, 0) == 5.0);
    CHECK_THAT(*p.args(0, 0), WithinAbs(0.927295218001612, 1e-12));
  }
  SECTION("identity") {
    const auto p = polar_split(ComplexMatrix::identity(2));
    CHECK(p.moduli == RealMatrix{{1.0, 0.0}, {0.0, 1.0}});
    CHECK(*p.args(0, 0) == 0.0);
    CHECK(*p.args(1, 1) == 0.0);
    CHECK_FALSE(p.args(0, 1).has_value());
    CHECK_FALSE(p.args(1, 0).has_value());
  }
  SECTION("axis-aligned entries") {
    const auto p = polar_split(cplx({{-2.0, 0.0}, {Complex{0.0, 1.0}, 1.0}}));
    CHECK(p.moduli == RealMatrix{{2.0, 0.0}, {1.0, 1.0}});
    CHECK_THAT(*p.args(0, 0), WithinAbs(pi, 1e-15));
    CHECK_FALSE(p.args(0, 1).has_value());
    CHECK_THAT(*p.args(1, 0), WithinAbs(pi / 2, 1e-15));
    CHECK(*p.args(1, 1) == 0.0);
  }
  SECTION("reconstruction on generated instances") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto a = gen_strict_instance(6, 0.5, seed);
      const auto back = reconstruct(polar_split(a));
      for (std::size_t k = 0; k < a.entries().size(); ++k)
        CHECK(std::abs(back.entries()[k] - a.entries()[k]) <= 1e-15 * std::abs(a.entries()[k]) + 1e-300);
    }
  }
}

TEST_CASE("diagonal_of", "[matrix-core]") {
  CHECK(diagonal_of(cplx({{1.0, 2.0}, {3.0, 4.0}})) == std::vector<Complex>{1.0, 4.0});
  CHECK(diagonal_of(ComplexMatrix::identity(3)) == std::vector<Complex>(3, 1.0));
  CHECK(diagonal_of(cplx({{0.0, 0.0}, {0.0, Complex{0.0, 5.0}}})) == std::vector<Complex>{0.0, Complex{0.0, 5.0}});
}

TEST_CASE("classify_rows", "[matrix-core]") {
  auto classes = [](const ComplexMatrix& a) {
    std::vector<RowClass> out;
    for (const auto& r : classify_rows(a).rows) out.push_back(r.cls);
    return out;
  };
  using enum RowClass;
  CHECK(classes(cplx({{2.0, 1.0}, {1.0, 2.0}})) == std::vector{Strict, Strict});
  CHECK(classes(cplx({{1.0, 1.0}, {1.0, 1.0}})) == std::vector{Weak, Weak});
  CHECK(classes(cplx({{1.0, 2.0}, {0.0, 1.0}})) == std::vector{Violated, Strict});

  SECTION("zero rows are weak, zero diagonal with off-diagonal mass is violated") {
    CHECK(classes(cplx({{0.0, 0.0}, {1.0, 0.0}})) == std::vector{Weak, Violated});
  }
  SECTION("near-equality falls in the tolerance band") {
    const auto p = classify_rows(cplx({{1.0 + 1e-14, 1.0}, {1.0, 1.0 - 1e-14}}));
    CHECK(p.all_weak());
    const auto q = classify_rows(cplx({{1.0 + 1e-6, 1.0}, {1.0, 1.0}}));
    CHECK(q.rows[0].cls == Strict);
  }
  SECTION("matrix-level flags") {
    const auto p = classify_rows(cplx({{1.0, 2.0}, {0.0, 1.0}}));
    CHECK_FALSE(p.dominant());
    CHECK(p.violated_rows() == std::vector<std::size_t>{0});
    CHECK(classify_rows(cplx({{2.0, 1.0}, {1.0, 2.0}})).all_strict());
  }
  SECTION("exact rationals decide without a band") {
    const RationalMatrix a{{Rational(1, 3), Rational(1, 3)}, {Rational(-1), Rational(2)}};
    const auto p = classify_rows(a);
    CHECK(p.rows[0].cls == Weak);
    CHECK(p.rows[1].cls == Strict);
    const RationalMatrix b{{Rational(1, 3), Rational(333333, 1000000)}, {Rational(0), Rational(1)}};
    CHECK(classify_rows(b).rows[0].cls == Strict);
  }
}

TEST_CASE("classification ignores unit-modulus left diagonal factors", "[matrix-core][property]") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto a = seed % 2 ? gen_singular_instance(5, 0.5, seed).A : gen_strict_instance(5, 0.5, seed);
    ComplexMatrix b = a;
    for (std::size_t i = 0; i < 5; ++i) {
      const Complex u = unit(detail::random_phase(rng));
      for (std::size_t j = 0; j < 5; ++j) b(i, j) = u * a(i, j);
    }
    const auto pa = classify_rows(a), pb = classify_rows(b);
    for (std::size_t i = 0; i < 5; ++i) CHECK(pa.rows[i].cls == pb.rows[i].cls);
  }
}

TEST_CASE("balance_check", "[matrix-core]") {
  const auto r1 = balance_check(cplx({{1.0, -1.0}, {-1.0, 1.0}}), Axis::Row);
  CHECK(r1.lines == std::vector<bool>{true, true});
  CHECK(r1.all);
  const auto r2 = balance_check(cplx({{1.0, 1.0}, {1.0, 1.0}}), Axis::Row);
  CHECK(r2.lines == std::vector<bool>{false, false});
  CHECK_FALSE(r2.all);
  const auto c3 = balance_check(cplx({{1.0, -1.0, 0.0}, {0.0, 1.0, -1.0}, {-1.0, 0.0, 1.0}}), Axis::Column);
  CHECK(c3.lines == std::vector<bool>{true, true, true});
  CHECK(balance_check(ComplexMatrix(2), Axis::Row).all);
  const auto skew = cplx({{2.0, -1.0}, {0.0, 1.0}});
  CHECK(balance_check(skew, Axis::Column).lines == std::vector<bool>{false, true});
}

TEST_CASE("comparison_matrix", "[matrix-core]") {
  CHECK(comparison_matrix(cplx({{1.0, 1.0}, {-1.0, 1.0}})) == RealMatrix{{1.0, -1.0}, {-1.0, 1.0}});
  CHECK(comparison_matrix(cplx({{Complex{3.0, 4.0}, 5.0}, {0.0, 2.0}})) == RealMatrix{{5.0, -5.0}, {0.0, 2.0}});
  CHECK(comparison_matrix(ComplexMatrix::identity(3)) == RealMatrix::identity(3));
}

TEST_CASE("comparison matrix of weakly dominant instances annihilates the ones vector", "[matrix-core][property]") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = gen_singular_instance(2 + seed % 6, 0.5, seed);
    const auto mu = comparison_matrix(inst.A);
    double worst = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < mu.size(); ++j) {
        s += mu(i, j);
        if (i == j) CHECK(mu(i, j) >= 0.0);
        else CHECK(mu(i, j) <= 0.0);
      }
      worst = std::max(worst, std::fabs(s));
    }
    CHECK(worst <= 1e-14 * max_row_modulus_sum(inst.A));
  }
  // and a strict row breaks it
  const auto mu = comparison_matrix(cplx({{3.0, 1.0}, {1.0, 1.0}}));
  CHECK(mu(0, 0) + mu(0, 1) == 2.0);
}

TEST_CASE("scale_columns", "[matrix-core]") {
  SECTION("generalized dominance example") {
    const auto a = cplx({{2.0, -3.0}, {-4.0 / 3.0, 2.0}});
    // independent check: the input itself is singular
    CHECK(std::abs(leibniz_det(a)) < 1e-15);
    const auto av = scale_columns(a, std::vector<double>{3.0, 2.0});
    CHECK_THAT(av(0, 0).real(), WithinAbs(6.0, 1e-15));
    CHECK_THAT(av(0, 1).real(), WithinAbs(-6.0, 1e-15));
    CHECK_THAT(av(1, 0).real(), WithinAbs(-4.0, 1e-15));
    CHECK_THAT(av(1, 1).real(), WithinAbs(4.0, 1e-15));
    CHECK(classify_rows(av).all_weak());
    CHECK_FALSE(classify_rows(a).dominant());
  }
  SECTION("unit weights leave A unchanged") {
    const auto a = gen_strict_instance(4, 0.6, 3);
    CHECK(scale_columns(a, std::vector<double>(4, 1.0)) == a);
  }
  SECTION("diagonal") {
    CHECK(scale_columns(ComplexMatrix::identity(2), std::vector<double>{2.0, 3.0}) == cplx({{2.0, 0.0}, {0.0, 3.0}}));
  }
  SECTION("errors") {
    const auto id = ComplexMatrix::identity(2);
    CHECK(code_of([&] { scale_columns(id, std::vector<double>{1.0, 0.0}); }) == Errc::NonPositiveWeight);
    CHECK(code_of([&] { scale_columns(id, std::vector<double>{1.0, -2.0}); }) == Errc::NonPositiveWeight);
    CHECK(code_of([&] { scale_columns(id, std::vector<double>{1.0}); }) == Errc::DimensionMismatch);
  }
  SECTION("valid weights remove every violated row") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto inst = gen_scaled_instance(2 + seed % 7, seed);
      CHECK(classify_rows(scale_columns(inst.A, inst.weights)).dominant());
    }
  }
}
