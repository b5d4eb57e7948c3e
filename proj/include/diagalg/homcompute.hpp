#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diagalg/algebra.hpp"
#include "diagalg/complex.hpp"

namespace diagalg {

// Total rank sum_{q <= Q} (dim A - 1)^q allowed in one bar complex.
inline constexpr Index kDefaultBarGuard = 10'000'000;

struct BarOptions {
  Index guard = kDefaultBarGuard;
  bool validate = true;  // check d∘d = 0 on every column
};

// A finite-dimensional augmented algebra with a basis closed under
// multiplication up to a scalar: basis[i] basis[j] = coeff * basis[index].
// Coefficients are integers; over Q the whole table may be scaled by a
// nonzero integer `scale` (the unit term then carries `scale` as well).
struct MultiplicationTable {
  struct Product {
    std::int64_t coeff;
    std::uint32_t index;
  };

  RingSpec ring = RingSpec::integers();
  std::size_t dim = 0;
  std::size_t identity = 0;
  std::vector<char> augmentation;  // ε(basis[i]) in {0, 1}
  std::vector<Product> products;   // row-major dim x dim
  std::int64_t scale = 1;

  static MultiplicationTable of(const AlgebraContext& ctx);
};

// Normalized bar complex with trivial coefficients on both sides, truncated
// at degree Q: C_q = Ī^{⊗q} on the basis b - ε(b) 1 (b != 1),
// d[a_1|...|a_q] = sum_{i=1}^{q-1} (-1)^i [...|a_i a_{i+1}|...].
struct BarComplex {
  int truncation = 0;
  Index reduced_dim = 0;
  ChainComplex complex;  // degrees 0..Q
};

BarComplex bar_complex(const MultiplicationTable& table, int Q, const BarOptions& options = {});
BarComplex bar_complex(const AlgebraContext& ctx, int Q, const BarOptions& options = {});

// Tor_q^A(1, 1) and Ext^q_A(1, 1) for q = 0..Q-1.
std::vector<HomologyGroup> compute_tor(const AlgebraContext& ctx, int Q, const BarOptions& options = {});
std::vector<HomologyGroup> compute_ext(const AlgebraContext& ctx, int Q, const BarOptions& options = {});

struct TorExt {
  std::vector<HomologyGroup> tor;
  std::vector<HomologyGroup> ext;
};
// Both from one bar complex.
TorExt compute_tor_ext(const AlgebraContext& ctx, int Q, const BarOptions& options = {});

// Default truncation: 5 for n <= 2, 4 for n = 3 over a field, 3 for n = 3
// over Z (and for larger n).
int default_truncation(int n, const RingSpec& ring);

inline constexpr int kMaxGroupN = 4;

// H_q(Σ_n; k) and H^q(Σ_n; k) for q = 0..Q-1 from the inhomogeneous
// normalized bar complex of the group, built from permutations directly.
std::vector<HomologyGroup> group_homology(int n, const RingSpec& ring, int Q, const BarOptions& options = {});
std::vector<HomologyGroup> group_cohomology(int n, const RingSpec& ring, int Q, const BarOptions& options = {});

struct DegreeMismatch {
  int q = 0;
  std::string left;
  std::string right;
};

struct MatchReport {
  bool match = true;
  int through = 0;
  std::vector<DegreeMismatch> mismatches;
};

// Degree-wise equality for q = 0..through; missing degrees count as mismatches.
MatchReport compare(const std::vector<HomologyGroup>& left, const std::vector<HomologyGroup>& right, int through,
                    const RingSpec& ring = RingSpec::integers());

}  // namespace diagalg
