#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "diagalg/coeff.hpp"
#include "diagalg/diagram.hpp"

namespace diagalg {

// Largest n accepted by basis enumeration (Bell(10) = 115975 set partitions).
inline constexpr int kMaxEnumerationN = 5;

std::uint64_t bell_number(int m);

// All diagrams of size n passing the family predicate, in canonical order
// (lexicographic on the canonical label string).
std::vector<Diagram> enumerate_basis(int n, const FamilySpec& family);

struct BasisProduct {
  int alpha;
  std::size_t index;
};

using ScalarColumn = std::vector<std::pair<std::size_t, Scalar>>;

// Column-major matrix with exact entries; column j lists its nonzero rows.
struct ScalarMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<ScalarColumn> columns;
};

struct StructureMatrices {
  std::vector<ScalarMatrix> left;   // left[b]: x -> b x
  std::vector<ScalarMatrix> right;  // right[b]: x -> x b
};

class AlgebraContext;
using ContextPtr = std::shared_ptr<const AlgebraContext>;

// One of P_n(delta), T_n(delta, r), TPP_n, U_n over a ring, with its enumerated
// basis. Immutable apart from write-once product caches.
class AlgebraContext {
 public:
  static ContextPtr create(int n, const FamilySpec& family, const RingSpec& ring, const Scalar& delta);
  static ContextPtr create(int n, const FamilySpec& family, const RingSpec& ring, long delta = 0) {
    return create(n, family, ring, Scalar(ring, delta));
  }

  int n() const noexcept { return n_; }
  const FamilySpec& family() const noexcept { return family_; }
  const RingSpec& ring() const noexcept { return ring_; }
  const Scalar& delta() const noexcept { return delta_; }

  std::size_t dim() const noexcept { return basis_.size(); }
  std::span<const Diagram> basis() const noexcept { return basis_; }
  const Diagram& diagram(std::size_t i) const { return basis_.at(i); }
  std::optional<std::size_t> index_of(const Diagram& d) const;
  std::size_t identity_index() const noexcept { return identity_; }
  bool is_permutation(std::size_t i) const { return permutation_[i] != 0; }
  std::vector<std::size_t> permutation_indices() const;

  // basis[i] * basis[j] = delta^alpha basis[index]. Cached per pair.
  BasisProduct product(std::size_t i, std::size_t j) const;
  // delta^alpha, with 0^0 = 1.
  const Scalar& delta_power(int alpha) const { return delta_powers_.at(alpha); }
  // Fills every product of the cache up front (OpenMP when available).
  void precompute_products() const;

  const StructureMatrices& structure_matrices() const;
  // Augmentation as a 1 x dim row: 1 at permutation diagrams.
  std::vector<Scalar> augmentation_row() const;

  std::string describe() const;

 private:
  AlgebraContext(int n, const FamilySpec& family, const RingSpec& ring, const Scalar& delta);

  BasisProduct compute_product(std::size_t i, std::size_t j) const;
  void ensure_cache() const;

  int n_;
  FamilySpec family_;
  RingSpec ring_;
  Scalar delta_;
  std::vector<Diagram> basis_;
  std::unordered_map<Diagram, std::size_t, DiagramHash> index_;
  std::vector<char> permutation_;
  std::size_t identity_ = 0;
  std::vector<Scalar> delta_powers_;

  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  mutable std::once_flag cache_once_;
  mutable std::unique_ptr<std::atomic<std::uint64_t>[]> cache_;
  mutable std::once_flag structure_once_;
  mutable std::unique_ptr<StructureMatrices> structure_;
};

// Finitely supported combination of basis diagrams; zero coefficients are never stored.
class AlgebraElement {
 public:
  explicit AlgebraElement(ContextPtr context);
  static AlgebraElement basis_element(ContextPtr context, std::size_t index);
  static AlgebraElement unit(ContextPtr context);
  // Throws if the diagram is not in the context's family.
  static AlgebraElement of(ContextPtr context, const Diagram& d, const Scalar& coefficient);

  const ContextPtr& context() const noexcept { return context_; }
  const std::map<std::size_t, Scalar>& terms() const noexcept { return terms_; }
  Scalar coefficient(std::size_t index) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  AlgebraElement& add_term(std::size_t index, const Scalar& coefficient);

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Scalar& c, const AlgebraElement& a);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

  std::string to_string() const;

 private:
  ContextPtr context_;
  std::map<std::size_t, Scalar> terms_;
};

inline AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) { return x * y; }
Scalar augmentation(const AlgebraElement& x);

}  // namespace diagalg
