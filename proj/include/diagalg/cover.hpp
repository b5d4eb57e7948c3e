#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diagalg/algebra.hpp"
#include "diagalg/diagram.hpp"

namespace diagalg {

// A left ideal spanned by the basis diagrams satisfying a predicate on the
// right column. K(i): vertex -i is a singleton block. L(i, j): -i and -j lie in
// the same block.
struct LeftIdealSpec {
  enum class Kind { K, L };

  Kind kind = Kind::L;
  int i = 1;
  int j = 0;  // 0 for K

  static LeftIdealSpec K(int i);
  static LeftIdealSpec L(int i, int j);  // requires i < j

  bool contains(const Diagram& d) const;
  std::string label() const;  // "K(1)", "L(1,2)"

  friend auto operator<=>(const LeftIdealSpec&, const LeftIdealSpec&) = default;
};

// Standard cover of I_{n-1}: all K(i) then all L(i,j) (lexicographic) for the
// partition family (including T:1); only the L(i,j) otherwise.
struct CoverSpec {
  ContextPtr context;
  std::vector<LeftIdealSpec> ideals;

  static CoverSpec standard(ContextPtr context);
  int width() const noexcept { return static_cast<int>(ideals.size()); }
};

// Basis indices of I_{n-1}: the non-permutation diagrams.
std::vector<std::size_t> target_indices(const AlgebraContext& ctx);

std::vector<std::size_t> ideal_indices(const AlgebraContext& ctx, const LeftIdealSpec& spec);
std::vector<Diagram> ideal_basis(const AlgebraContext& ctx, const LeftIdealSpec& spec);

// Basis of the intersection of the given ideals; the whole basis for an empty list.
std::vector<std::size_t> intersection_indices(const AlgebraContext& ctx, std::span<const LeftIdealSpec> subset);
std::vector<Diagram> intersection_basis(const AlgebraContext& ctx, std::span<const LeftIdealSpec> subset);

// Blocks {a, b, -a, -b} and {k, -k} otherwise. Requires 1 <= a < b <= n.
Diagram nu(int n, int a, int b);
// Blocks {i, j, -j}, {-i} and {k, -k} otherwise. Right multiplication by it
// fixes every diagram in which -i is a singleton. Requires i != j.
Diagram isolator(int n, int i, int j);

// Candidate idempotent generator for the intersection over a subset: the
// product of nu(i, j) over the L(i, j) in the subset (in the given order),
// followed by isolators for the K(i). Empty when the subset isolates every
// right vertex.
std::optional<Diagram> cover_generator(int n, std::span<const LeftIdealSpec> subset);

enum class WitnessStatus { Zero, Idempotent, Failed };

struct IntersectionWitness {
  std::vector<int> subset;  // positions in CoverSpec::ideals
  std::string label;        // "L(1,2) ∩ L(1,3)"
  WitnessStatus status = WitnessStatus::Zero;
  std::size_t dim = 0;
  std::optional<Diagram> generator;
};

struct CoverFailure {
  std::string subset;  // label of the subset, or "union"
  std::string check;
  std::string diagram;
};

struct CoverReport {
  bool covers = false;
  int width = 0;
  int verified_height = 0;
  std::vector<CoverFailure> failures;
  std::vector<IntersectionWitness> intersections;

  bool passed() const { return covers && failures.empty(); }
};

// Checks that the ideals sum to I_{n-1} and that each intersection over at
// most `height` ideals is zero or A e for an idempotent diagram e with
// rho e = rho on the intersection. The height defaults to the width, or n - 1
// for the partition family.
CoverReport verify_cover(const CoverSpec& cover, std::optional<int> height_limit = std::nullopt);

std::string to_string(WitnessStatus status);

}  // namespace diagalg
