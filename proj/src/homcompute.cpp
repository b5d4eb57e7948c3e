#include "diagalg/homcompute.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "diagalg/error.hpp"

namespace diagalg {

TorExt compute_tor_ext(const AlgebraContext& ctx, int Q, const BarOptions& options) {
  if (Q < 1) return {};
  const auto bar = bar_complex(ctx, Q, options);
  auto [tor, ext] = bar.complex.both_ranges(0, Q - 1);
  return {std::move(tor), std::move(ext)};
}

std::vector<HomologyGroup> compute_tor(const AlgebraContext& ctx, int Q, const BarOptions& options) {
  if (Q < 1) return {};
  return bar_complex(ctx, Q, options).complex.homology_range(0, Q - 1);
}

std::vector<HomologyGroup> compute_ext(const AlgebraContext& ctx, int Q, const BarOptions& options) {
  if (Q < 1) return {};
  return bar_complex(ctx, Q, options).complex.cohomology_range(0, Q - 1);
}

int default_truncation(int n, const RingSpec& ring) {
  if (n <= 2) return 5;
  if (n == 3 && ring.is_field()) return 4;
  return 3;
}

namespace {

// Inhomogeneous normalized bar complex of a finite group with trivial
// coefficients: C_q spanned by tuples of non-identity elements,
// d[g_1|...|g_q] = [g_2|...|g_q] + sum_{i=1}^{q-1} (-1)^i [...|g_i g_{i+1}|...]
//                  + (-1)^q [g_1|...|g_{q-1}],
// where tuples containing the identity vanish.
class GroupBarDifferential final : public ColumnSource {
 public:
  // mult[a * order + b] = index of g_a g_b; element 0 is the identity.
  GroupBarDifferential(std::shared_ptr<const std::vector<std::uint32_t>> mult, Index order, int q,
                       std::uint64_t modulus)
      : mult_(std::move(mult)), order_(order), q_(q), modulus_(modulus) {}

  Index rows() const override { return ipow(order_ - 1, q_ - 1); }
  Index cols() const override { return ipow(order_ - 1, q_); }

  void column(Index j, SparseColumn& out) const override {
    out.clear();
    const Index m = order_ - 1;
    std::vector<Index> g(q_);  // group indices, all >= 1
    Index x = j;
    for (int k = q_ - 1; k >= 0; --k) {
      g[k] = x % m + 1;
      x /= m;
    }
    auto emit = [&](const std::vector<Index>& tuple, std::int64_t sign) {
      Index row = 0;
      for (auto e : tuple) {
        if (e == 0) return;
        row = row * m + (e - 1);
      }
      out.push_back({row, sign});
    };
    std::vector<Index> face;
    for (int i = 0; i <= q_; ++i) {
      face.clear();
      for (int k = 0; k < q_; ++k) {
        if (i == 0 && k == 0) continue;
        if (i == q_ && k == q_ - 1) continue;
        if (i > 0 && i < q_ && k == i) continue;
        if (i > 0 && i < q_ && k == i - 1) {
          face.push_back((*mult_)[g[i - 1] * order_ + g[i]]);
          continue;
        }
        face.push_back(g[k]);
      }
      emit(face, i % 2 ? -1 : 1);
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size();) {
      Entry acc = out[r++];
      while (r < out.size() && out[r].row == acc.row) acc.value += out[r++].value;
      if (modulus_) {
        acc.value %= static_cast<std::int64_t>(modulus_);
        if (acc.value < 0) acc.value += static_cast<std::int64_t>(modulus_);
      }
      if (acc.value != 0) out[w++] = acc;
    }
    out.resize(w);
  }

 private:
  static Index ipow(Index base, int e) {
    Index r = 1;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
  }

  std::shared_ptr<const std::vector<std::uint32_t>> mult_;
  Index order_;
  int q_;
  std::uint64_t modulus_;
};

ChainComplex group_bar_complex(int n, const RingSpec& ring, int Q, const BarOptions& options) {
  if (n < 1 || n > kMaxGroupN)
    throw ResourceGuard("group (co)homology oracle supports 1 <= n <= " + std::to_string(kMaxGroupN) + ", got n = " +
                        std::to_string(n));
  std::vector<std::vector<int>> elements;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do elements.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::vector<int>, std::uint32_t> index;
  for (std::size_t k = 0; k < elements.size(); ++k) index[elements[k]] = static_cast<std::uint32_t>(k);
  const Index order = static_cast<Index>(elements.size());
  auto mult = std::make_shared<std::vector<std::uint32_t>>(order * order);
  std::vector<int> gh(n);
  for (Index a = 0; a < order; ++a)
    for (Index b = 0; b < order; ++b) {
      for (int x = 0; x < n; ++x) gh[x] = elements[a][elements[b][x]];
      (*mult)[a * order + b] = index.at(gh);
    }

  std::vector<Index> dims;
  Index total = 0, power = 1;
  for (int q = 0; q <= Q; ++q) {
    if (q > 0) power *= order - 1;
    total += power;
    if (total > options.guard)
      throw ResourceGuard("group bar complex for n = " + std::to_string(n) + " through degree " + std::to_string(Q) +
                          " exceeds the rank guard of " + std::to_string(options.guard));
    dims.push_back(power);
  }
  const std::uint64_t modulus = ring.kind() == RingKind::ModM ? ring.modulus() : 0;
  std::vector<MatrixPtr> diffs;
  for (int q = 1; q <= Q; ++q) diffs.push_back(std::make_shared<GroupBarDifferential>(mult, order, q, modulus));
  return ChainComplex(ring, 0, std::move(dims), std::move(diffs), options.validate);
}

}  // namespace

std::vector<HomologyGroup> group_homology(int n, const RingSpec& ring, int Q, const BarOptions& options) {
  if (Q < 1) return {};
  return group_bar_complex(n, ring, Q, options).homology_range(0, Q - 1);
}

std::vector<HomologyGroup> group_cohomology(int n, const RingSpec& ring, int Q, const BarOptions& options) {
  if (Q < 1) return {};
  return group_bar_complex(n, ring, Q, options).cohomology_range(0, Q - 1);
}

MatchReport compare(const std::vector<HomologyGroup>& left, const std::vector<HomologyGroup>& right, int through,
                    const RingSpec& ring) {
  MatchReport report;
  report.through = through;
  for (int q = 0; q <= through; ++q) {
    const bool have_left = q < static_cast<int>(left.size());
    const bool have_right = q < static_cast<int>(right.size());
    if (have_left && have_right && left[q] == right[q]) continue;
    report.match = false;
    report.mismatches.push_back({q, have_left ? left[q].to_string(ring) : "missing",
                                 have_right ? right[q].to_string(ring) : "missing"});
  }
  return report;
}

}  // namespace diagalg
