#pragma once

#include <span>
#include <string>
#include <vector>

#include "diagalg/complex.hpp"
#include "diagalg/cover.hpp"

namespace diagalg {

// Number of elements of s smaller than j; j must belong to s.
int sign_count(std::span<const int> s, int j);

// One nonzero intersection, a direct summand of C_p.
struct MVSummand {
  int p = 0;
  std::vector<int> subset;  // positions in CoverSpec::ideals
  std::string label;
  std::vector<std::size_t> basis;  // algebra basis indices, increasing
  Index offset = 0;                // first coordinate inside C_p
  std::optional<Diagram> generator;
};

// C_{-1} = A/I on the permutation diagrams, C_0 = A, C_p the sum of the
// nonzero p-fold intersections for 1 <= p <= w. Integer entries (0, ±1).
struct MVComplex {
  CoverSpec cover;
  ChainComplex complex;
  std::vector<MVSummand> summands;          // p >= 1, by p then subset
  std::vector<std::size_t> quotient_basis;  // permutation diagrams

  int width() const { return cover.width(); }
  // Coordinate of basis diagram `index` in the summand, or -1.
  Index coordinate(const MVSummand& summand, std::size_t index) const;
};

// Builds the complex and checks d∘d = 0 (ConsistencyError otherwise).
MVComplex build_mv(const CoverSpec& cover);

struct ExactnessCheck {
  RingSpec ring;
  bool surjective = false;  // C_0 -> A/I onto
  ExactnessReport exactness;  // degrees 0..through
  int through = 0;
};

// Exactness at degrees 0..through and surjectivity onto A/I, over `ring`.
ExactnessCheck check_mv_exactness(const MVComplex& mv, const RingSpec& ring, int through);

struct TrivialTensorDegree {
  int p = 0;
  HomologyGroup group;  // 1 ⊗_A C_p as a k-module
  Index witness_rank = 0;  // number of summands whose generator has ε(e) = 1
};

// 1 ⊗_A C_p for p = 0..w, each computed as C_p modulo the span of
// b x - ε(b) x (b a basis diagram, x a basis vector of a summand).
std::vector<TrivialTensorDegree> tensor_with_trivial(const MVComplex& mv);

struct ProjectivityCheck {
  std::string label;
  RingSpec ring;
  Index summand_dim = 0;
  Index rank = 0;  // rank of the span of b e over all basis diagrams b
  bool contained = false;  // every b e lies in the summand
  bool ok() const { return contained && rank == summand_dim; }
};

// Each summand equals A e for its generator, by rank over each ring given.
std::vector<ProjectivityCheck> check_projectivity(const MVComplex& mv, std::span<const RingSpec> rings);

}  // namespace diagalg
