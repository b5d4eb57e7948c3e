#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "diagalg/coeff.hpp"
#include "diagalg/sparse_matrix.hpp"

namespace diagalg {

struct HomologyGroup {
  Index free_rank = 0;
  std::vector<mpz_class> torsion;  // d_1 | d_2 | ..., each >= 2

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  // "Z^2 + Z/2 + Z/6" style, with "0" for the zero group. The ring only
  // names the free part.
  std::string to_string(const RingSpec& ring) const;

  friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

struct ExactnessReport {
  bool exact = true;
  std::optional<int> first_failing_degree;
};

using MatrixPtr = std::shared_ptr<const ColumnSource>;

// Free chain complex C_lo <- ... <- C_hi. differential(q) is d_q : C_q -> C_{q-1}
// for lo < q <= hi; d_lo and d_{hi+1} are zero. Entries are integers, read
// modulo p when the ring is Z/p.
class ChainComplex {
 public:
  ChainComplex() : ring_(RingSpec::integers()) {}
  // differentials[k] is d_{lo+1+k}; the list has dims.size() - 1 entries
  // (or is empty when dims is). When validate is set, shapes and d∘d = 0 are
  // checked and a ConsistencyError names the offending degree.
  ChainComplex(const RingSpec& ring, int lo, std::vector<Index> dims, std::vector<MatrixPtr> differentials,
               bool validate = true);

  const RingSpec& ring() const noexcept { return ring_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const noexcept { return dims_.empty(); }
  Index dim(int q) const;
  const std::vector<Index>& dims() const noexcept { return dims_; }
  // nullptr when d_q is zero by degree.
  MatrixPtr differential(int q) const;

  // The same integer matrices read over another ring (no revalidation).
  ChainComplex over(const RingSpec& ring) const;

  // Throws ConsistencyError when d_{q-1} d_q != 0 for some q.
  void validate() const;

  HomologyGroup homology(int q) const;
  // Homology for q in [from, to]; each differential is reduced once.
  std::vector<HomologyGroup> homology_range(int from, int to) const;

  // Hom into the ring: D_{-q} = C_q^*, with differential d_q transposed.
  // H^q(C) = H_{-q}(dualize(C)).
  ChainComplex dualize() const;
  // Cohomology H^q for q in [from, to].
  std::vector<HomologyGroup> cohomology_range(int from, int to) const;
  // Homology and cohomology for q in [from, to] from one reduction.
  std::pair<std::vector<HomologyGroup>, std::vector<HomologyGroup>> both_ranges(int from, int to) const;

  ExactnessReport check_exactness(int from, int to) const;

 private:
  RingSpec ring_;
  int lo_ = 0;
  std::vector<Index> dims_;
  std::vector<MatrixPtr> differentials_;
};

}  // namespace diagalg
