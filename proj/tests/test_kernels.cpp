#include <random>

#include "doctest.h"

#include "diagalg/homcompute.hpp"
#include "diagalg/kernels.hpp"

using namespace diagalg;

namespace {

SparseMatrix random_sparse(std::mt19937& rng, Index rows, Index cols, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-5, 5);
  std::vector<Triplet> t;
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (u(rng) < density) t.push_back({i, j, v(rng)});
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

}  // namespace

TEST_CASE("materialize and transpose agree between serial and parallel kernels") {
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto m = random_sparse(rng, 40 + t * 30, 3000 - t * 200, 0.01);
    const auto a = kernels::serial::materialize(m);
    const auto b = kernels::omp::materialize(m);
    CHECK(a == m);
    CHECK(b == m);
    const auto ts = kernels::serial::transpose(m);
    const auto to = kernels::omp::transpose(m);
    CHECK(ts == m.transpose());
    CHECK(to == ts);
    CHECK(ts.transpose() == m);
  }
}

TEST_CASE("lazy bar differentials") {
  const auto ctx = AlgebraContext::create(2, FamilySpec::partition(), RingSpec::integers(), 1L);
  const auto bar = bar_complex(*ctx, 3);
  for (int q = 1; q <= 2; ++q) {
    const auto outer = bar.complex.differential(q);
    const auto inner = bar.complex.differential(q + 1);
    CHECK(kernels::serial::materialize(*inner) == kernels::omp::materialize(*inner));
    CHECK(kernels::serial::transpose(*inner) == kernels::omp::transpose(*inner));
    const auto s = kernels::serial::composition_defect(*outer, *inner, RingSpec::integers());
    const auto o = kernels::omp::composition_defect(*outer, *inner, RingSpec::integers());
    CHECK(s.nonzero_columns == 0);
    CHECK(s.first_bad_column == -1);
    CHECK(o.nonzero_columns == 0);
  }
}

TEST_CASE("composition defect locates the first bad column") {
  const auto outer = SparseMatrix::from_dense({{1, 1}});
  const auto inner = SparseMatrix::from_dense({{1, 0, 1}, {-1, 0, 1}});
  for (auto f : {kernels::serial::composition_defect, kernels::omp::composition_defect}) {
    const auto z = f(outer, inner, RingSpec::integers());
    CHECK(z.nonzero_columns == 1);
    CHECK(z.first_bad_column == 2);
    CHECK(f(outer, inner, RingSpec::modulo(2)).nonzero_columns == 0);
  }
  CHECK(kernels::omp::max_threads() >= 1);
}
