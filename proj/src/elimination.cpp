#include "diagalg/elimination.hpp"

#include <algorithm>
#include <type_traits>

#include "diagalg/error.hpp"
#include "diagalg/smith.hpp"

namespace diagalg {

namespace {

// ---------------------------------------------------------------------------
// Prime field

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct FieldVec {
  std::vector<Index> rows;
  std::vector<u64> vals;
};

u64 mod_pow(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = static_cast<u64>(static_cast<u128>(result) * base % p);
    base = static_cast<u64>(static_cast<u128>(base) * base % p);
    exp >>= 1;
  }
  return result;
}

// out = v - f * piv
void field_axpy(const FieldVec& v, u64 f, const FieldVec& piv, u64 p, FieldVec& out) {
  out.rows.clear();
  out.vals.clear();
  const u64 negf = (p - f) % p;
  std::size_t a = 0, b = 0;
  while (a < v.rows.size() || b < piv.rows.size()) {
    if (b == piv.rows.size() || (a < v.rows.size() && v.rows[a] < piv.rows[b])) {
      out.rows.push_back(v.rows[a]);
      out.vals.push_back(v.vals[a]);
      ++a;
    } else if (a == v.rows.size() || piv.rows[b] < v.rows[a]) {
      out.rows.push_back(piv.rows[b]);
      out.vals.push_back(static_cast<u64>(static_cast<u128>(negf) * piv.vals[b] % p));
      ++b;
    } else {
      const u64 x = static_cast<u64>((static_cast<u128>(negf) * piv.vals[b] + v.vals[a]) % p);
      if (x) {
        out.rows.push_back(v.rows[a]);
        out.vals.push_back(x);
      }
      ++a;
      ++b;
    }
  }
}

Index field_rank(const ColumnSource& m, u64 p) {
  std::vector<std::int32_t> pivot_of_row(m.rows(), -1);
  std::vector<FieldVec> pivots;
  SparseColumn col;
  FieldVec v, tmp;
  const auto sp = static_cast<std::int64_t>(p);
  for (Index j = 0; j < m.cols(); ++j) {
    m.column(j, col);
    v.rows.clear();
    v.vals.clear();
    for (const auto& e : col) {
      std::int64_t x = e.value % sp;
      if (x < 0) x += sp;
      if (x) {
        v.rows.push_back(e.row);
        v.vals.push_back(static_cast<u64>(x));
      }
    }
    while (!v.rows.empty()) {
      const std::int32_t k = pivot_of_row[v.rows.back()];
      if (k < 0) {
        const u64 inv = mod_pow(v.vals.back(), p - 2, p);
        for (auto& x : v.vals) x = static_cast<u64>(static_cast<u128>(x) * inv % p);
        pivot_of_row[v.rows.back()] = static_cast<std::int32_t>(pivots.size());
        pivots.push_back(v);
        break;
      }
      field_axpy(v, v.vals.back(), pivots[k], p, tmp);
      std::swap(v, tmp);
    }
  }
  return static_cast<Index>(pivots.size());
}

// ---------------------------------------------------------------------------
// Integers

struct Overflow {};

struct CheckedInt {
  using value_type = std::int64_t;
  static std::int64_t from(std::int64_t x) { return x; }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t neg(std::int64_t a) {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  static bool divides(std::int64_t a, std::int64_t b) { return b % a == 0; }
  static std::int64_t quot(std::int64_t b, std::int64_t a) {
    if (a == -1 && b == INT64_MIN) throw Overflow{};
    return b / a;
  }
  static bool is_zero(std::int64_t a) { return a == 0; }
  static bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
  static bool negative(std::int64_t a) { return a < 0; }
  // g = s a + t b, g > 0
  static void egcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
    __int128 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      const __int128 q = r0 / r1;
      __int128 tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (r0 < 0) {
      r0 = -r0;
      s0 = -s0;
      t0 = -t0;
    }
    if (r0 > INT64_MAX || s0 > INT64_MAX || s0 < -INT64_MAX || t0 > INT64_MAX || t0 < -INT64_MAX) throw Overflow{};
    g = static_cast<std::int64_t>(r0);
    s = static_cast<std::int64_t>(s0);
    t = static_cast<std::int64_t>(t0);
  }
  static mpz_class to_mpz(std::int64_t a) { return mpz_class(static_cast<long>(a)); }
};

struct BigInt {
  using value_type = mpz_class;
  static mpz_class from(std::int64_t x) { return mpz_class(static_cast<long>(x)); }
  static mpz_class add(const mpz_class& a, const mpz_class& b) { return a + b; }
  static mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
  static mpz_class neg(const mpz_class& a) { return -a; }
  static bool divides(const mpz_class& a, const mpz_class& b) {
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  }
  static mpz_class quot(const mpz_class& b, const mpz_class& a) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  static bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
  static bool is_unit(const mpz_class& a) { return a == 1 || a == -1; }
  static bool negative(const mpz_class& a) { return sgn(a) < 0; }
  static void egcd(const mpz_class& a, const mpz_class& b, mpz_class& g, mpz_class& s, mpz_class& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  static mpz_class to_mpz(const mpz_class& a) { return a; }
};

template <class Ops>
struct IntVec {
  std::vector<Index> rows;
  std::vector<typename Ops::value_type> vals;
};

// out = x * A + y * B
template <class Ops>
void int_combine(const typename Ops::value_type& x, const IntVec<Ops>& A, const typename Ops::value_type& y,
                 const IntVec<Ops>& B, IntVec<Ops>& out) {
  out.rows.clear();
  out.vals.clear();
  std::size_t a = 0, b = 0;
  while (a < A.rows.size() || b < B.rows.size()) {
    typename Ops::value_type v;
    Index r;
    if (b == B.rows.size() || (a < A.rows.size() && A.rows[a] < B.rows[b])) {
      r = A.rows[a];
      v = Ops::mul(x, A.vals[a++]);
    } else if (a == A.rows.size() || B.rows[b] < A.rows[a]) {
      r = B.rows[b];
      v = Ops::mul(y, B.vals[b++]);
    } else {
      r = A.rows[a];
      v = Ops::add(Ops::mul(x, A.vals[a++]), Ops::mul(y, B.vals[b++]));
    }
    if (!Ops::is_zero(v)) {
      out.rows.push_back(r);
      out.vals.push_back(std::move(v));
    }
  }
}

template <class Ops>
void make_lead_positive(IntVec<Ops>& v) {
  if (Ops::negative(v.vals.back()))
    for (auto& x : v.vals) x = Ops::neg(x);
}

template <class Ops>
struct IntEchelon {
  std::vector<IntVec<Ops>> pivots;
  std::vector<std::int32_t> pivot_of_row;
};

// Reduces v against the echelon; extended-gcd steps replace a pivot whose
// leading entry does not divide v's.
template <class Ops>
void echelon_insert(IntEchelon<Ops>& ech, IntVec<Ops> v, IntVec<Ops>& tmp, IntVec<Ops>& newp) {
  using V = typename Ops::value_type;
  const V one = Ops::from(1);
  while (!v.rows.empty()) {
    const std::int32_t k = ech.pivot_of_row[v.rows.back()];
    if (k < 0) {
      make_lead_positive(v);
      ech.pivot_of_row[v.rows.back()] = static_cast<std::int32_t>(ech.pivots.size());
      ech.pivots.push_back(std::move(v));
      return;
    }
    auto& piv = ech.pivots[k];
    const V a = piv.vals.back();
    const V b = v.vals.back();
    if (Ops::divides(a, b)) {
      int_combine<Ops>(one, v, Ops::neg(Ops::quot(b, a)), piv, tmp);
      std::swap(v, tmp);
    } else {
      V g, s, t;
      Ops::egcd(a, b, g, s, t);
      int_combine<Ops>(s, piv, t, v, newp);  // leading entry g
      int_combine<Ops>(Ops::quot(b, g), piv, Ops::neg(Ops::quot(a, g)), v, tmp);  // leading entry 0
      make_lead_positive(newp);
      std::swap(piv, newp);
      std::swap(v, tmp);
    }
  }
}

// Clears v on every unit-pivot row, top down. Each unit pivot only has
// entries at or below its own leading row, and its leading entry is +1.
template <class Ops>
void clear_unit_rows(IntVec<Ops>& v, const IntEchelon<Ops>& ech, const std::vector<char>& unit_row, IntVec<Ops>& tmp) {
  const auto one = Ops::from(1);
  std::size_t pos = v.rows.size();
  while (pos > 0) {
    --pos;
    const Index r = v.rows[pos];
    if (!unit_row[r]) continue;
    const auto& u = ech.pivots[ech.pivot_of_row[r]];
    int_combine<Ops>(one, v, Ops::neg(v.vals[pos]), u, tmp);
    std::swap(v, tmp);
    pos = std::lower_bound(v.rows.begin(), v.rows.end(), r) - v.rows.begin();
  }
}

// Remainders at most this many dense entries go straight to the dense Smith form.
constexpr std::size_t kDenseRemainder = std::size_t{1} << 22;

template <class Ops>
std::vector<mpz_class> dense_factors(const std::vector<IntVec<Ops>>& vecs) {
  std::vector<Index> rows;
  for (const auto& v : vecs) rows.insert(rows.end(), v.rows.begin(), v.rows.end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  DenseIntMatrix y(rows.size(), std::vector<mpz_class>(vecs.size()));
  for (std::size_t c = 0; c < vecs.size(); ++c)
    for (std::size_t k = 0; k < vecs[c].rows.size(); ++k) {
      const auto r = std::lower_bound(rows.begin(), rows.end(), vecs[c].rows[k]) - rows.begin();
      y[r][c] = Ops::to_mpz(vecs[c].vals[k]);
    }
  return smith_diagonal_dense(std::move(y));
}

template <class Ops>
std::size_t dense_size(const std::vector<IntVec<Ops>>& vecs) {
  std::vector<Index> rows;
  for (const auto& v : vecs) rows.insert(rows.end(), v.rows.begin(), v.rows.end());
  std::sort(rows.begin(), rows.end());
  return static_cast<std::size_t>(std::unique(rows.begin(), rows.end()) - rows.begin()) * vecs.size();
}


// Invariant factors of an echelon form: one factor 1 per unit pivot, plus
// the factors of the non-unit pivots after clearing unit-pivot rows.
template <class Ops>
std::vector<mpz_class> echelon_invariants(const IntEchelon<Ops>& ech) {
  std::vector<mpz_class> factors;
  std::vector<std::size_t> non_unit;
  std::vector<char> unit_row(ech.pivot_of_row.size(), 0);
  for (std::size_t k = 0; k < ech.pivots.size(); ++k) {
    if (Ops::is_unit(ech.pivots[k].vals.back())) {
      unit_row[ech.pivots[k].rows.back()] = 1;
      factors.push_back(1);
    } else {
      non_unit.push_back(k);
    }
  }
  if (non_unit.empty()) return factors;
  IntVec<Ops> tmp;
  std::vector<IntVec<Ops>> reduced;
  for (std::size_t k : non_unit) {
    IntVec<Ops> v = ech.pivots[k];
    clear_unit_rows(v, ech, unit_row, tmp);
    reduced.push_back(std::move(v));
  }
  for (auto& f : dense_factors(reduced)) factors.push_back(std::move(f));
  return factors;
}

// Phase one only performs divisible reductions: v -= q * pivot when the
// pivot's leading entry divides v's, or the roles swap when v's divides the
// pivot's. Both are unimodular and keep entries small. A column whose leading
// entry is incomparable with the pivot's is set aside. Afterwards the
// non-unit pivots and the set-aside columns are cleared on the unit-pivot
// rows and their Smith form supplies the remaining factors.
template <class Ops>
std::vector<mpz_class> integer_invariants(const ColumnSource& m, int depth = 0);

// Bound on how often a remainder is transposed and sent through phase one again.
constexpr int kMaxTransposeDepth = 4;

// Smith form of a remainder: dense when small, otherwise the transpose goes
// back through phase one (the Smith form is transpose invariant), and as a
// last resort the extended-gcd echelon.
template <class Ops>
std::vector<mpz_class> remainder_factors(std::vector<IntVec<Ops>> vecs, Index nrows, int depth) {
  if (vecs.empty()) return {};
  if (dense_size(vecs) <= kDenseRemainder) return dense_factors(vecs);
  if constexpr (std::is_same_v<Ops, CheckedInt>) {
    if (depth < kMaxTransposeDepth) {
      std::vector<Index> rows;
      for (const auto& v : vecs) rows.insert(rows.end(), v.rows.begin(), v.rows.end());
      std::sort(rows.begin(), rows.end());
      rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
      std::vector<Triplet> t;
      for (std::size_t c = 0; c < vecs.size(); ++c)
        for (std::size_t k = 0; k < vecs[c].rows.size(); ++k) {
          const Index r = std::lower_bound(rows.begin(), rows.end(), vecs[c].rows[k]) - rows.begin();
          t.push_back({static_cast<Index>(c), r, vecs[c].vals[k]});
        }
      const auto transposed = SparseMatrix::from_triplets(static_cast<Index>(vecs.size()),
                                                          static_cast<Index>(rows.size()), std::move(t));
      vecs.clear();
      return integer_invariants<CheckedInt>(transposed, depth + 1);
    }
  }
  IntEchelon<Ops> ech;
  ech.pivot_of_row.assign(nrows, -1);
  IntVec<Ops> tmp, newp;
  for (auto& v : vecs) echelon_insert(ech, std::move(v), tmp, newp);
  return echelon_invariants(ech);
}

template <class Ops>
std::vector<mpz_class> integer_invariants(const ColumnSource& m, int depth) {
  using V = typename Ops::value_type;
  IntEchelon<Ops> ech;
  ech.pivot_of_row.assign(m.rows(), -1);
  std::vector<IntVec<Ops>> deferred;
  SparseColumn col;
  IntVec<Ops> v, tmp;
  const V one = Ops::from(1);
  for (Index j = 0; j < m.cols(); ++j) {
    m.column(j, col);
    v.rows.clear();
    v.vals.clear();
    for (const auto& e : col)
      if (e.value != 0) {
        v.rows.push_back(e.row);
        v.vals.push_back(Ops::from(e.value));
      }
    while (!v.rows.empty()) {
      const std::int32_t k = ech.pivot_of_row[v.rows.back()];
      if (k < 0) {
        make_lead_positive(v);
        ech.pivot_of_row[v.rows.back()] = static_cast<std::int32_t>(ech.pivots.size());
        ech.pivots.push_back(v);
        break;
      }
      auto& piv = ech.pivots[k];
      if (Ops::divides(piv.vals.back(), v.vals.back())) {
        int_combine<Ops>(one, v, Ops::neg(Ops::quot(v.vals.back(), piv.vals.back())), piv, tmp);
        std::swap(v, tmp);
      } else if (Ops::divides(v.vals.back(), piv.vals.back())) {
        make_lead_positive(v);
        std::swap(v, piv);
      } else {
        deferred.push_back(v);
        break;
      }
    }
  }
  std::vector<mpz_class> factors;
  std::vector<char> unit_row(m.rows(), 0);
  std::vector<IntVec<Ops>> rest;
  for (const auto& p : ech.pivots) {
    if (Ops::is_unit(p.vals.back())) {
      unit_row[p.rows.back()] = 1;
      factors.emplace_back(1);
    } else {
      rest.push_back(p);
    }
  }
  for (auto& d : deferred) rest.push_back(std::move(d));
  deferred.clear();
  if (rest.empty()) return factors;
  std::vector<IntVec<Ops>> cleared;
  for (auto& x : rest) {
    clear_unit_rows(x, ech, unit_row, tmp);
    if (!x.rows.empty()) cleared.push_back(std::move(x));
  }
  for (auto& f : remainder_factors(std::move(cleared), m.rows(), depth)) factors.push_back(std::move(f));
  return factors;
}

template <class Ops>
EliminationResult integer_elimination(const ColumnSource& m, bool want_torsion) {
  const auto factors = integer_invariants<Ops>(m);
  EliminationResult out;
  out.rank = static_cast<Index>(factors.size());
  if (want_torsion)
    for (const auto& f : factors)
      if (f > 1) out.torsion.push_back(f);
  return out;
}

EliminationResult integer_elimination_any(const ColumnSource& m, bool want_torsion) {
  try {
    return integer_elimination<CheckedInt>(m, want_torsion);
  } catch (const Overflow&) {
    return integer_elimination<BigInt>(m, want_torsion);
  }
}

}  // namespace

EliminationResult eliminate(const ColumnSource& m, const RingSpec& ring) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return integer_elimination_any(m, true);
    case RingKind::Rationals:
      return integer_elimination_any(m, false);
    case RingKind::ModM:
      if (!ring.is_field())
        throw UnsupportedRing("homology over " + ring.to_string() + " is unsupported: modulus is not prime");
      return {field_rank(m, ring.modulus()), {}};
  }
  return {};
}

std::vector<mpz_class> sparse_invariant_factors(const ColumnSource& m) {
  try {
    return integer_invariants<CheckedInt>(m);
  } catch (const Overflow&) {
    return integer_invariants<BigInt>(m);
  }
}

}  // namespace diagalg
