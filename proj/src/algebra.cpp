#include "diagalg/algebra.hpp"

#include <sstream>

#include "diagalg/error.hpp"
#include "diagalg/kernels.hpp"

namespace diagalg {

std::uint64_t bell_number(int m) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= m; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

std::vector<Diagram> enumerate_basis(int n, const FamilySpec& family) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (n > kMaxEnumerationN)
    throw ResourceGuard("basis enumeration for n = " + std::to_string(n) + " would visit Bell(" +
                        std::to_string(2 * n) + ") = " + std::to_string(bell_number(2 * n)) +
                        " set partitions (limit n <= " + std::to_string(kMaxEnumerationN) + ")");
  if (family.kind == FamilyKind::Tanabe && family.r < 1) throw InvalidArgument("Tanabe parameter r must be >= 1");

  // Restricted growth strings a_0 = 0, a_k <= 1 + max(a_0..a_{k-1}), in lexicographic order.
  const int m = 2 * n;
  std::vector<int> rgs(m, 0), prefix_max(m, 0);
  std::vector<Diagram> out;
  while (true) {
    Diagram d = Diagram::from_labels(n, rgs);
    if (d.satisfies(family)) out.push_back(std::move(d));
    int k = m - 1;
    while (k > 0 && rgs[k] == prefix_max[k - 1] + 1) --k;
    if (k == 0) break;
    ++rgs[k];
    prefix_max[k] = std::max(prefix_max[k - 1], rgs[k]);
    for (int t = k + 1; t < m; ++t) {
      rgs[t] = 0;
      prefix_max[t] = prefix_max[k];
    }
  }
  return out;
}

AlgebraContext::AlgebraContext(int n, const FamilySpec& family, const RingSpec& ring, const Scalar& delta)
    : n_(n), family_(family), ring_(ring), delta_(delta) {
  if (!(delta.ring() == ring))
    throw ContextMismatch("delta " + delta.to_string() + " is not an element of " + ring.to_string());
  basis_ = enumerate_basis(n, family);
  index_.reserve(basis_.size());
  permutation_.resize(basis_.size());
  const Diagram id = Diagram::identity(n);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index_.emplace(basis_[i], i);
    permutation_[i] = basis_[i].is_permutation();
    if (basis_[i] == id) identity_ = i;
  }
  for (int alpha = 0; alpha <= n; ++alpha) delta_powers_.push_back(delta.pow(alpha));
}

ContextPtr AlgebraContext::create(int n, const FamilySpec& family, const RingSpec& ring, const Scalar& delta) {
  return ContextPtr(new AlgebraContext(n, family, ring, delta));
}

std::optional<std::size_t> AlgebraContext::index_of(const Diagram& d) const {
  auto it = index_.find(d);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> AlgebraContext::permutation_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (permutation_[i]) out.push_back(i);
  return out;
}

BasisProduct AlgebraContext::compute_product(std::size_t i, std::size_t j) const {
  auto [alpha, d3] = compose(basis_[i], basis_[j]);
  auto idx = index_of(d3);
  if (!idx)
    throw ConsistencyError("product " + basis_[i].to_string() + " * " + basis_[j].to_string() + " = " +
                           d3.to_string() + " leaves the " + family_.to_string() + " basis");
  return {alpha, *idx};
}

namespace {
// Keep the per-pair cache below ~200 MB.
constexpr std::size_t kMaxCachedDim = 5000;
}

void AlgebraContext::ensure_cache() const {
  std::call_once(cache_once_, [this] {
    if (dim() > kMaxCachedDim) return;
    const std::size_t cells = dim() * dim();
    cache_.reset(new std::atomic<std::uint64_t>[cells]);
    for (std::size_t k = 0; k < cells; ++k) cache_[k].store(kEmpty, std::memory_order_relaxed);
  });
}

BasisProduct AlgebraContext::product(std::size_t i, std::size_t j) const {
  ensure_cache();
  if (!cache_) return compute_product(i, j);
  auto& cell = cache_[i * dim() + j];
  std::uint64_t packed = cell.load(std::memory_order_acquire);
  if (packed == kEmpty) {
    // Concurrent fills may compute the same value twice; both store identical bits.
    const BasisProduct p = compute_product(i, j);
    packed = (static_cast<std::uint64_t>(p.alpha) << 32) | static_cast<std::uint64_t>(p.index);
    cell.store(packed, std::memory_order_release);
  }
  return {static_cast<int>(packed >> 32), static_cast<std::size_t>(packed & 0xffffffffu)};
}

void AlgebraContext::precompute_products() const {
  ensure_cache();
  if (!cache_) return;
  const auto table = kernels::omp::product_table(*this);
  for (std::size_t k = 0; k < table.size(); ++k) {
    const std::uint64_t packed =
        (static_cast<std::uint64_t>(table[k].alpha) << 32) | static_cast<std::uint64_t>(table[k].index);
    cache_[k].store(packed, std::memory_order_release);
  }
}

const StructureMatrices& AlgebraContext::structure_matrices() const {
  std::call_once(structure_once_, [this] {
    auto sm = std::make_unique<StructureMatrices>();
    const std::size_t d = dim();
    sm->left.resize(d);
    sm->right.resize(d);
    for (std::size_t b = 0; b < d; ++b) {
      auto& left = sm->left[b];
      auto& right = sm->right[b];
      left.rows = left.cols = right.rows = right.cols = d;
      left.columns.resize(d);
      right.columns.resize(d);
      for (std::size_t x = 0; x < d; ++x) {
        const auto bx = product(b, x);
        if (!delta_power(bx.alpha).is_zero()) left.columns[x].emplace_back(bx.index, delta_power(bx.alpha));
        const auto xb = product(x, b);
        if (!delta_power(xb.alpha).is_zero()) right.columns[x].emplace_back(xb.index, delta_power(xb.alpha));
      }
    }
    structure_ = std::move(sm);
  });
  return *structure_;
}

std::vector<Scalar> AlgebraContext::augmentation_row() const {
  std::vector<Scalar> row;
  row.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) row.push_back(Scalar(ring_, permutation_[i] ? 1L : 0L));
  return row;
}

std::string AlgebraContext::describe() const {
  std::ostringstream os;
  os << family_.to_string() << " n=" << n_ << " over " << ring_.to_string();
  if (!family_.ignores_delta()) os << " delta=" << delta_.to_string();
  return os.str();
}

AlgebraElement::AlgebraElement(ContextPtr context) : context_(std::move(context)) {}

AlgebraElement AlgebraElement::basis_element(ContextPtr context, std::size_t index) {
  if (index >= context->dim()) throw InvalidArgument("basis index out of range");
  AlgebraElement e(context);
  e.terms_.emplace(index, Scalar::one(context->ring()));
  return e;
}

AlgebraElement AlgebraElement::unit(ContextPtr context) {
  const auto id = context->identity_index();
  return basis_element(std::move(context), id);
}

AlgebraElement AlgebraElement::of(ContextPtr context, const Diagram& d, const Scalar& coefficient) {
  auto idx = context->index_of(d);
  if (!idx) throw InvalidArgument("diagram " + d.to_string() + " is not in " + context->describe());
  AlgebraElement e(context);
  e.add_term(*idx, coefficient);
  return e;
}

Scalar AlgebraElement::coefficient(std::size_t index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Scalar::zero(context_->ring()) : it->second;
}

AlgebraElement& AlgebraElement::add_term(std::size_t index, const Scalar& coefficient) {
  if (!(coefficient.ring() == context_->ring())) throw ContextMismatch("coefficient from a different ring");
  auto [it, inserted] = terms_.try_emplace(index, coefficient);
  if (!inserted) it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
  return *this;
}

namespace {
void require_same_context(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.context() != b.context())
    throw ContextMismatch("algebra elements from different contexts: " + a.context()->describe() + " vs " +
                          b.context()->describe());
}
}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_context(a, b);
  AlgebraElement out = a;
  for (const auto& [i, c] : b.terms_) out.add_term(i, c);
  return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_context(a, b);
  AlgebraElement out = a;
  for (const auto& [i, c] : b.terms_) out.add_term(i, -c);
  return out;
}

AlgebraElement operator*(const Scalar& c, const AlgebraElement& a) {
  AlgebraElement out(a.context_);
  for (const auto& [i, x] : a.terms_) out.add_term(i, c * x);
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_context(a, b);
  const auto& ctx = *a.context_;
  AlgebraElement out(a.context_);
  for (const auto& [i, x] : a.terms_)
    for (const auto& [j, y] : b.terms_) {
      const auto p = ctx.product(i, j);
      const Scalar& w = ctx.delta_power(p.alpha);
      if (!w.is_zero()) out.add_term(p.index, w * x * y);
    }
  return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return a.context_ == b.context_ && a.terms_ == b.terms_;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + "*[" + context_->diagram(i).to_string() + "]";
  }
  return out;
}

Scalar augmentation(const AlgebraElement& x) {
  Scalar sum = Scalar::zero(x.context()->ring());
  for (const auto& [i, c] : x.terms())
    if (x.context()->is_permutation(i)) sum += c;
  return sum;
}

}  // namespace diagalg
