#pragma once

#include <algorithm>
#include <vector>

#include "diagalg/algebra.hpp"
#include "diagalg/error.hpp"
#include "diagalg/sparse_matrix.hpp"

namespace diagalg::kernels::detail {

inline BasisProduct basis_product(const AlgebraContext& ctx, std::size_t i, std::size_t j) {
  auto [alpha, d3] = compose(ctx.diagram(i), ctx.diagram(j));
  auto idx = ctx.index_of(d3);
  if (!idx) throw ConsistencyError("product leaves the basis: " + d3.to_string());
  return {alpha, *idx};
}

struct ProductScratch {
  SparseColumn inner;
  SparseColumn outer;
  std::vector<std::pair<Index, __int128>> acc;
};

// Is outer * (column j of inner) nonzero? Modulus 0 means exact integers.
inline bool column_product_nonzero(const ColumnSource& outer, const ColumnSource& inner, Index j,
                                   std::uint64_t modulus, ProductScratch& s) {
  inner.column(j, s.inner);
  s.acc.clear();
  for (const auto& e : s.inner) {
    outer.column(e.row, s.outer);
    for (const auto& f : s.outer) s.acc.emplace_back(f.row, static_cast<__int128>(e.value) * f.value);
  }
  std::sort(s.acc.begin(), s.acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t k = 0;
  while (k < s.acc.size()) {
    __int128 total = 0;
    const Index r = s.acc[k].first;
    for (; k < s.acc.size() && s.acc[k].first == r; ++k) total += s.acc[k].second;
    if (modulus) total %= static_cast<__int128>(modulus);
    if (total != 0) return true;
  }
  return false;
}

inline std::uint64_t defect_modulus(const RingSpec& ring) {
  return ring.kind() == RingKind::ModM ? ring.modulus() : 0;
}

}  // namespace diagalg::kernels::detail
