#include "test_support.hpp"

#include <catch_amalgamated.hpp>

using namespace ddsing;
using ddsing::testing::cplx;
using ddsing::testing::inf_norm;
using ddsing::testing::leibniz_det;
using ddsing::testing::mat_vec;
using Catch::Matchers::WithinAbs;

TEST_CASE("rank_det_oracle on small cases", "[oracle]") {
  const auto id = rank_det_oracle(ComplexMatrix::identity(4));
  CHECK(id.rank == 4);
  CHECK(id.det == Complex{1.0, 0.0});
  CHECK(id.null_basis.empty());

  const auto ones = rank_det_oracle(cplx({{1.0, 1.0}, {1.0, 1.0}}));
  CHECK(ones.rank == 1);
  CHECK(ones.det == Complex{0.0, 0.0});
  REQUIRE(ones.null_basis.size() == 1);
  CHECK(ones.null_basis[0] == std::vector<Complex>{-1.0, 1.0});

  const auto z = rank_det_oracle(ComplexMatrix(3));
  CHECK(z.rank == 0);
  CHECK(z.null_basis.size() == 3);

  const auto sw = rank_det_oracle(cplx({{0.0, 2.0}, {3.0, 0.0}}));
  CHECK(sw.rank == 2);
  CHECK_THAT(sw.det.real(), WithinAbs(-6.0, 1e-15));
}

TEST_CASE("oracle size cap", "[oracle]") {
  CHECK_NOTHROW(rank_det_oracle(ComplexMatrix::identity(kOracleMaxDim)));
  CHECK_THROWS_AS(rank_det_oracle(ComplexMatrix::identity(kOracleMaxDim + 1)), Error);
}

TEST_CASE("oracle determinant matches the Leibniz expansion", "[oracle][property]") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const auto a = gen_strict_instance(n, 0.7, seed);
    const auto r = rank_det_oracle(a);
    const Complex ref = leibniz_det(a);
    CHECK(r.rank == n);
    CHECK(std::abs(r.det - ref) <= 1e-12 * std::pow(max_row_modulus_sum(a), double(n)));
  }
}

TEST_CASE("oracle null basis spans the kernel", "[oracle][property]") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = gen_reducible_instance(seed);
    const auto r = rank_det_oracle(inst.A);
    CHECK(r.null_basis.size() == inst.A.size() - r.rank);
    for (const auto& x : r.null_basis)
      CHECK(inf_norm(mat_vec(inst.A, x)) <= 1e-9 * max_row_modulus_sum(inst.A) * inf_norm(x));
  }
}

TEST_CASE("exact_rank_det", "[oracle][exact]") {
  RationalMatrix a(2);
  a(0, 0) = Rational(1, 3), a(0, 1) = Rational(1, 2);
  a(1, 0) = Rational(2, 3), a(1, 1) = Rational(1);
  const auto r = exact_rank_det(a);
  CHECK(r.rank == 1);
  CHECK(r.det == 0);
  a(1, 1) = Rational(2);
  const auto s = exact_rank_det(a);
  CHECK(s.rank == 2);
  CHECK(s.det == Rational(1, 3));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = gen_rational_weak_instance(2 + seed % 5, 0.6, seed, true);
    const auto e = exact_rank_det(m);
    CHECK(e.det == 0);
    CHECK(e.rank < m.size());
    CHECK(std::abs(leibniz_det(to_complex(m))) <= 1e-9);
  }
}
