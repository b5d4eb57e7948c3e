#include <algorithm>

#include "diagalg/error.hpp"
#include "diagalg/homcompute.hpp"

namespace diagalg {

namespace {

std::int64_t fit64(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw ResourceGuard(std::string(what) + " exceeds 64 bits");
  return z.get_si();
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceGuard("bar differential entry exceeds 64 bits");
  return r;
}

std::uint64_t field_modulus(const RingSpec& ring) { return ring.kind() == RingKind::ModM ? ring.modulus() : 0; }

std::int64_t reduce(std::int64_t v, std::uint64_t modulus) {
  if (!modulus) return v;
  const auto m = static_cast<std::int64_t>(modulus);
  v %= m;
  return v < 0 ? v + m : v;
}

// Products of reduced basis vectors ã b̃ in reduced coordinates, as CSR over
// the pairs (a, b).
struct NormalizedProducts {
  Index m = 0;
  std::vector<Index> start;  // m*m + 1
  std::vector<std::uint32_t> index;
  std::vector<std::int64_t> value;
};

NormalizedProducts normalized_products(const MultiplicationTable& t) {
  const auto modulus = field_modulus(t.ring);
  NormalizedProducts np;
  const Index d = static_cast<Index>(t.dim);
  np.m = d - 1;
  const Index m = np.m;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> cells(m * m);
  auto full = [&](Index r) { return r < static_cast<Index>(t.identity) ? r : r + 1; };
  auto reduced = [&](Index k) { return k < static_cast<Index>(t.identity) ? k : k - 1; };
#pragma omp parallel for schedule(dynamic, 16)
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      const Index A = full(a), B = full(b);
      std::pair<std::uint32_t, std::int64_t> terms[3];
      int count = 0;
      const auto& p = t.products[A * d + B];
      // ab - ε(b) a - ε(a) b + ε(a)ε(b) 1, without the unit coordinate.
      if (p.coeff != 0 && p.index != t.identity)
        terms[count++] = {static_cast<std::uint32_t>(reduced(p.index)), p.coeff};
      if (t.augmentation[B]) terms[count++] = {static_cast<std::uint32_t>(a), -t.scale};
      if (t.augmentation[A]) terms[count++] = {static_cast<std::uint32_t>(b), -t.scale};
      std::sort(terms, terms + count);
      auto& cell = cells[a * m + b];
      for (int k = 0; k < count; ++k) {
        if (!cell.empty() && cell.back().first == terms[k].first)
          cell.back().second = checked_add(cell.back().second, terms[k].second);
        else
          cell.push_back(terms[k]);
      }
      std::erase_if(cell, [&](auto& e) {
        e.second = reduce(e.second, modulus);
        return e.second == 0;
      });
    }
  np.start.assign(m * m + 1, 0);
  for (Index k = 0; k < m * m; ++k) np.start[k + 1] = np.start[k] + static_cast<Index>(cells[k].size());
  np.index.reserve(np.start.back());
  np.value.reserve(np.start.back());
  for (const auto& cell : cells)
    for (const auto& [i, v] : cell) {
      np.index.push_back(i);
      np.value.push_back(v);
    }
  return np;
}

constexpr int kMaxBarDegree = 40;

// d_q of the normalized bar complex, generated column by column.
class BarDifferential final : public ColumnSource {
 public:
  BarDifferential(std::shared_ptr<const NormalizedProducts> np, int q, std::uint64_t modulus)
      : np_(std::move(np)), q_(q), modulus_(modulus) {
    pow_.assign(q + 1, 1);
    for (int k = 1; k <= q; ++k) pow_[k] = pow_[k - 1] * np_->m;
  }

  Index rows() const override { return pow_[q_ - 1]; }
  Index cols() const override { return pow_[q_]; }

  void column(Index j, SparseColumn& out) const override {
    out.clear();
    const Index m = np_->m;
    Index digit[kMaxBarDegree];
    Index x = j;
    for (int k = q_ - 1; k >= 0; --k) {
      digit[k] = x % m;
      x /= m;
    }
    Index high = 0;  // value of digits [0, i)
    for (int i = 0; i + 1 < q_; ++i) {
      const Index tail = pow_[q_ - 2 - i];
      const Index low = j % tail;
      const std::int64_t sign = (i % 2 == 0) ? -1 : 1;  // (-1)^{i+1}
      const Index cell = digit[i] * m + digit[i + 1];
      for (Index e = np_->start[cell]; e < np_->start[cell + 1]; ++e)
        out.push_back({(high * m + np_->index[e]) * tail + low, sign * np_->value[e]});
      high = high * m + digit[i];
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size();) {
      Entry acc = out[r++];
      while (r < out.size() && out[r].row == acc.row) acc.value = checked_add(acc.value, out[r++].value);
      acc.value = reduce(acc.value, modulus_);
      if (acc.value != 0) out[w++] = acc;
    }
    out.resize(w);
  }

 private:
  std::shared_ptr<const NormalizedProducts> np_;
  int q_;
  std::uint64_t modulus_;
  std::vector<Index> pow_;
};

}  // namespace

MultiplicationTable MultiplicationTable::of(const AlgebraContext& ctx) {
  MultiplicationTable t;
  t.ring = ctx.ring();
  t.dim = ctx.dim();
  t.identity = ctx.identity_index();
  t.augmentation.resize(t.dim);
  for (std::size_t k = 0; k < t.dim; ++k) t.augmentation[k] = ctx.is_permutation(k) ? 1 : 0;

  // Integer coefficient of delta^alpha, with rationals cleared by den^n.
  std::vector<std::int64_t> coeff(ctx.n() + 1);
  const mpq_class& delta = ctx.delta().value();
  if (ctx.ring().kind() == RingKind::Rationals) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), delta.get_den().get_mpz_t(), ctx.n());
    t.scale = fit64(scale, "rational scale");
    for (int a = 0; a <= ctx.n(); ++a) {
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), delta.get_num().get_mpz_t(), a);
      mpz_pow_ui(den.get_mpz_t(), delta.get_den().get_mpz_t(), ctx.n() - a);
      coeff[a] = fit64(num * den, "structure constant");
    }
  } else {
    for (int a = 0; a <= ctx.n(); ++a)
      coeff[a] = fit64(mpz_class(ctx.delta_power(a).value().get_num()), "structure constant");
  }

  ctx.precompute_products();
  t.products.resize(t.dim * t.dim);
  for (std::size_t i = 0; i < t.dim; ++i)
    for (std::size_t j = 0; j < t.dim; ++j) {
      const auto p = ctx.product(i, j);
      t.products[i * t.dim + j] = {coeff[p.alpha], static_cast<std::uint32_t>(p.index)};
    }
  return t;
}

BarComplex bar_complex(const MultiplicationTable& table, int Q, const BarOptions& options) {
  if (Q < 0 || Q >= kMaxBarDegree) throw InvalidArgument("bar truncation must lie in 0.." + std::to_string(kMaxBarDegree - 1));
  if (table.dim == 0) throw InvalidArgument("empty algebra");
  const Index m = static_cast<Index>(table.dim) - 1;
  std::vector<Index> dims;
  Index total = 0, power = 1;
  for (int q = 0; q <= Q; ++q) {
    if (q > 0 && m > 0 && power > options.guard / m) {
      power = options.guard + 1;
    } else if (q > 0) {
      power *= m;
    }
    total += power;
    if (total > options.guard)
      throw ResourceGuard("bar complex through degree " + std::to_string(Q) + " on " + std::to_string(m) +
                          " generators exceeds the rank guard of " + std::to_string(options.guard) +
                          " (projected total rank sum_q " + std::to_string(m) + "^q > " + std::to_string(options.guard) +
                          ")");
    dims.push_back(power);
  }

  auto np = std::make_shared<const NormalizedProducts>(normalized_products(table));
  const auto modulus = field_modulus(table.ring);
  std::vector<MatrixPtr> diffs;
  for (int q = 1; q <= Q; ++q) diffs.push_back(std::make_shared<BarDifferential>(np, q, modulus));
  BarComplex bar;
  bar.truncation = Q;
  bar.reduced_dim = m;
  bar.complex = ChainComplex(table.ring, 0, std::move(dims), std::move(diffs), options.validate);
  return bar;
}

BarComplex bar_complex(const AlgebraContext& ctx, int Q, const BarOptions& options) {
  return bar_complex(MultiplicationTable::of(ctx), Q, options);
}

}  // namespace diagalg
