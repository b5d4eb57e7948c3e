#include "diagalg/mv.hpp"

#include <algorithm>
#include <map>

#include "diagalg/elimination.hpp"
#include "diagalg/error.hpp"

namespace diagalg {

int sign_count(std::span<const int> s, int j) {
  if (std::find(s.begin(), s.end(), j) == s.end()) throw InvalidArgument("sign_count: j is not in S");
  return static_cast<int>(std::count_if(s.begin(), s.end(), [j](int x) { return x < j; }));
}

Index MVComplex::coordinate(const MVSummand& summand, std::size_t index) const {
  auto it = std::lower_bound(summand.basis.begin(), summand.basis.end(), index);
  if (it == summand.basis.end() || *it != index) return -1;
  return summand.offset + (it - summand.basis.begin());
}

namespace {

std::vector<std::vector<int>> all_subsets_of_size(int w, int size) {
  std::vector<std::vector<int>> out;
  if (size > w) return out;
  std::vector<int> s(size);
  for (int k = 0; k < size; ++k) s[k] = k;
  while (true) {
    out.push_back(s);
    int k = size - 1;
    while (k >= 0 && s[k] == w - size + k) --k;
    if (k < 0) break;
    ++s[k];
    for (int m = k + 1; m < size; ++m) s[m] = s[m - 1] + 1;
  }
  return out;
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw ResourceGuard("matrix entry exceeds 64 bits");
  return z.get_si();
}

// Integer column spanning the same line as the given ring-valued column:
// fractions are cleared by the lcm of the denominators.
SparseColumn integral_column(std::map<Index, Scalar> entries) {
  mpz_class den = 1;
  for (const auto& [row, c] : entries) den = lcm(den, mpz_class(c.value().get_den()));
  SparseColumn col;
  for (const auto& [row, c] : entries) {
    if (c.is_zero()) continue;
    const mpz_class v = c.value().get_num() * (den / c.value().get_den());
    col.push_back({row, to_int64(v)});
  }
  return col;
}

}  // namespace

MVComplex build_mv(const CoverSpec& cover) {
  const auto& ctx = *cover.context;
  MVComplex mv{cover, {}, {}, ctx.permutation_indices()};
  const int w = cover.width();

  // Summand directory, by p then subset.
  std::vector<Index> dims(w + 2, 0);  // degrees -1..w
  dims[0] = static_cast<Index>(mv.quotient_basis.size());
  dims[1] = static_cast<Index>(ctx.dim());
  std::map<std::vector<int>, std::size_t> summand_of;
  for (int p = 1; p <= w; ++p) {
    for (auto& s : all_subsets_of_size(w, p)) {
      std::vector<LeftIdealSpec> ideals;
      for (int k : s) ideals.push_back(cover.ideals[k]);
      auto basis = intersection_indices(ctx, ideals);
      if (basis.empty()) continue;
      MVSummand summand;
      summand.p = p;
      summand.subset = s;
      summand.label = "{";
      for (std::size_t k = 0; k < ideals.size(); ++k) summand.label += (k ? ", " : "") + ideals[k].label();
      summand.label += "}";
      summand.basis = std::move(basis);
      summand.offset = dims[p + 1];
      summand.generator = cover_generator(ctx.n(), ideals);
      dims[p + 1] += static_cast<Index>(summand.basis.size());
      summand_of[s] = mv.summands.size();
      mv.summands.push_back(std::move(summand));
    }
  }

  std::vector<MatrixPtr> diffs;
  // d_0 : A -> A/I.
  {
    std::vector<Triplet> t;
    for (std::size_t k = 0; k < mv.quotient_basis.size(); ++k)
      t.push_back({static_cast<Index>(k), static_cast<Index>(mv.quotient_basis[k]), 1});
    diffs.push_back(std::make_shared<SparseMatrix>(SparseMatrix::from_triplets(dims[0], dims[1], std::move(t))));
  }
  // d_1 : C_1 -> A, sum of inclusions.
  // d_p : x in summand S  ->  sum_j (-1)^{#(S,j)} x in summand S \ {j}.
  for (int p = 1; p <= w; ++p) {
    std::vector<Triplet> t;
    for (const auto& summand : mv.summands) {
      if (summand.p != p) continue;
      for (std::size_t k = 0; k < summand.basis.size(); ++k) {
        const Index col = summand.offset + static_cast<Index>(k);
        if (p == 1) {
          t.push_back({static_cast<Index>(summand.basis[k]), col, 1});
          continue;
        }
        for (int j : summand.subset) {
          std::vector<int> face;
          for (int x : summand.subset)
            if (x != j) face.push_back(x);
          const auto& target = mv.summands[summand_of.at(face)];
          const Index row = mv.coordinate(target, summand.basis[k]);
          if (row < 0) throw ConsistencyError("intersection " + summand.label + " not inside " + target.label);
          t.push_back({row, col, sign_count(summand.subset, j) % 2 ? -1 : 1});
        }
      }
    }
    diffs.push_back(std::make_shared<SparseMatrix>(SparseMatrix::from_triplets(dims[p], dims[p + 1], std::move(t))));
  }
  mv.complex = ChainComplex(ctx.ring().supports_homology() ? ctx.ring() : RingSpec::integers(), -1, dims,
                            std::move(diffs), true);
  return mv;
}

ExactnessCheck check_mv_exactness(const MVComplex& mv, const RingSpec& ring, int through) {
  ExactnessCheck out{ring, false, {}, through};
  const auto c = mv.complex.over(ring);
  const auto groups = c.homology_range(-1, std::max(-1, through));
  out.surjective = groups.front().is_zero();
  for (int q = 0; q <= through; ++q)
    if (!groups[q + 1].is_zero()) {
      out.exactness.exact = false;
      out.exactness.first_failing_degree = q;
      break;
    }
  return out;
}

std::vector<TrivialTensorDegree> tensor_with_trivial(const MVComplex& mv) {
  const auto& ctx = *mv.cover.context;
  const RingSpec& ring = ctx.ring();
  std::vector<TrivialTensorDegree> out;
  const Scalar zero = Scalar::zero(ctx.ring());

  // Relations for one left module spanned by `basis` (closed under the action),
  // placed at rows offset + position.
  auto relations = [&](const std::vector<std::size_t>& basis, Index offset, std::vector<SparseColumn>& cols) {
    auto row_of = [&](std::size_t index) -> Index {
      auto it = std::lower_bound(basis.begin(), basis.end(), index);
      if (it == basis.end() || *it != index) throw ConsistencyError("summand is not a left ideal");
      return offset + (it - basis.begin());
    };
    for (std::size_t b = 0; b < ctx.dim(); ++b)
      for (std::size_t x : basis) {
        const auto prod = ctx.product(b, x);
        std::map<Index, Scalar> entries;
        const Scalar& coeff = ctx.delta_power(prod.alpha);
        if (!coeff.is_zero()) entries.emplace(row_of(prod.index), coeff);
        if (ctx.is_permutation(b)) {
          auto [it, fresh] = entries.emplace(row_of(x), zero);
          it->second = it->second - Scalar::one(ctx.ring());
        }
        auto col = integral_column(std::move(entries));
        if (!col.empty()) cols.push_back(std::move(col));
      }
  };

  for (int p = 0; p <= mv.width(); ++p) {
    std::vector<SparseColumn> cols;
    TrivialTensorDegree deg;
    deg.p = p;
    Index rows = 0;
    if (p == 0) {
      std::vector<std::size_t> all(ctx.dim());
      for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
      relations(all, 0, cols);
      rows = static_cast<Index>(ctx.dim());
      deg.witness_rank = 1;  // A = A * 1
    } else {
      for (const auto& s : mv.summands) {
        if (s.p != p) continue;
        relations(s.basis, s.offset, cols);
        rows += static_cast<Index>(s.basis.size());
        if (s.generator && s.generator->is_permutation()) ++deg.witness_rank;
      }
    }
    for (auto& c : cols)
      std::sort(c.begin(), c.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    const auto m = SparseMatrix::from_columns(rows, std::move(cols));
    const auto r = eliminate(m, ring);
    deg.group.free_rank = rows - r.rank;
    deg.group.torsion = r.torsion;
    out.push_back(std::move(deg));
  }
  return out;
}

std::vector<ProjectivityCheck> check_projectivity(const MVComplex& mv, std::span<const RingSpec> rings) {
  const auto& ctx = *mv.cover.context;
  std::vector<ProjectivityCheck> out;
  for (const auto& s : mv.summands) {
    std::vector<SparseColumn> cols;
    bool contained = s.generator.has_value();
    if (s.generator) {
      const auto gi = ctx.index_of(*s.generator);
      if (!gi) {
        contained = false;
      } else {
        for (std::size_t b = 0; b < ctx.dim(); ++b) {
          const auto prod = ctx.product(b, *gi);
          if (!std::binary_search(s.basis.begin(), s.basis.end(), prod.index)) contained = false;
          std::map<Index, Scalar> entry;
          entry.emplace(static_cast<Index>(prod.index), ctx.delta_power(prod.alpha));
          auto col = integral_column(std::move(entry));
          if (!col.empty()) cols.push_back(std::move(col));
        }
      }
    }
    const auto m = SparseMatrix::from_columns(static_cast<Index>(ctx.dim()), std::move(cols));
    for (const auto& ring : rings) {
      ProjectivityCheck c{s.label, ring, static_cast<Index>(s.basis.size()), 0, contained};
      c.rank = rank(m, ring);
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace diagalg
