// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diagalg/elimination.hpp"
#include "diagalg/homcompute.hpp"
#include "diagalg/kernels.hpp"
#include "diagalg/mv.hpp"
#include "diagalg/smith.hpp"

using namespace diagalg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

const FamilySpec kT2 = FamilySpec::tanabe(2);
const FamilySpec kT3 = FamilySpec::tanabe(3);
const std::vector<FamilySpec> kCoverFamilies = {kT2, kT3, FamilySpec::totally_propagating(), FamilySpec::uniform_block()};

std::vector<Index> dims_of(const std::vector<HomologyGroup>& g) {
  std::vector<Index> out;
  for (const auto& x : g) out.push_back(x.free_rank);
  return out;
}

std::string show(const std::vector<HomologyGroup>& g, const RingSpec& ring) {
  std::string s;
  for (const auto& x : g) s += (s.empty() ? "" : ", ") + x.to_string(ring);
  return "(" + s + ")";
}

// Field-duality ledger filled by every field computation below.
int duality_contexts = 0;
std::vector<std::string> duality_failures;

TorExt tor_ext(const AlgebraContext& ctx, int Q) {
  auto te = compute_tor_ext(ctx, Q);
  if (ctx.ring().is_field()) {
    ++duality_contexts;
    if (dims_of(te.tor) != dims_of(te.ext)) duality_failures.push_back(ctx.describe());
  }
  return te;
}

Outcome criterion1() {
  Outcome o;
  const auto d1 = Diagram::parse("4:{1 3 -2}|{2}|{4}|{-1}|{-3 -4}");
  const auto d2 = Diagram::parse("4:{2 -3}|{3 4}|{1}|{-1 -2}|{-4}");
  const auto r = compose(d1, d2);
  const auto expected = Diagram::from_blocks(4, {{{Column::Left, 1}, {Column::Left, 3}, {Column::Right, 3}},
                                                 {{Column::Right, 1}, {Column::Right, 2}},
                                                 {{Column::Left, 2}},
                                                 {{Column::Left, 4}},
                                                 {{Column::Right, 4}}});
  if (r.alpha != 2) o.fail("alpha = " + std::to_string(r.alpha));
  if (r.diagram != expected) o.fail("d3 = " + r.diagram.to_string());
  if (o.pass) o.detail = "alpha=2, d3=" + r.diagram.to_string();
  return o;
}

// Restricted growth strings on 2n points, filtered by block statistics.
std::size_t rgs_count(int n, const FamilySpec& f) {
  std::size_t count = 0;
  std::vector<int> a(2 * n, 0);
  std::function<void(int, int)> rec = [&](int k, int max) {
    if (k == 2 * n) {
      for (int b = 0; b <= max; ++b) {
        int l = 0, r = 0;
        for (int v = 0; v < 2 * n; ++v)
          if (a[v] == b) (v < n ? l : r)++;
        if (f.kind == FamilyKind::Tanabe && std::abs(l - r) % f.r) return;
        if (f.kind == FamilyKind::TotallyPropagating && (!l || !r)) return;
        if (f.kind == FamilyKind::UniformBlock && l != r) return;
      }
      ++count;
      return;
    }
    for (int v = 0; v <= max + 1; ++v) {
      a[k] = v;
      rec(k + 1, std::max(max, v));
    }
  };
  rec(1, 0);
  return count;
}

Outcome criterion2() {
  Outcome o;
  std::vector<std::uint64_t> bell{1};
  for (int m = 0; m < 8; ++m) {
    std::uint64_t s = 0, c = 1;
    for (int k = 0; k <= m; ++k) {
      s += c * bell[k];
      c = c * (m - k) / (k + 1);
    }
    bell.push_back(s);
  }
  const std::size_t known[] = {2, 15, 203, 4140};
  for (int n = 1; n <= 4; ++n) {
    const auto got = enumerate_basis(n, FamilySpec::partition()).size();
    if (got != known[n - 1] || got != bell[2 * n] || got != rgs_count(n, FamilySpec::partition()))
      o.fail("|P_" + std::to_string(n) + "| = " + std::to_string(got));
  }
  auto check = [&](const FamilySpec& f, std::size_t want) {
    const auto got = enumerate_basis(2, f).size();
    if (got != want || got != rgs_count(2, f)) o.fail("|" + f.to_string() + "_2| = " + std::to_string(got));
  };
  check(kT2, 4);
  check(FamilySpec::uniform_block(), 3);
  check(FamilySpec::totally_propagating(), 3);
  if (o.pass) o.detail = "|P_n| = 2, 15, 203, 4140; |T_2(2)| = 4; |U_2| = |TPP_2| = 3";
  return o;
}

Outcome criterion3() {
  Outcome o;
  int covers = 0, witnesses = 0;
  auto run = [&](const FamilySpec& f, int n, int height) {
    const auto ctx = AlgebraContext::create(n, f, RingSpec::integers(), 1L);
    const auto cover = CoverSpec::standard(ctx);
    const auto report = verify_cover(cover);
    const std::string tag = f.to_string() + " n=" + std::to_string(n);
    if (!report.passed()) o.fail(tag + ": cover check failed");
    if (report.verified_height != height) o.fail(tag + ": verified_height " + std::to_string(report.verified_height));
    ++covers;
    // Recheck every idempotent witness directly against the intersection basis.
    for (const auto& w : report.intersections) {
      if (w.status == WitnessStatus::Failed) o.fail(tag + " " + w.label + ": witness failed");
      if (w.status != WitnessStatus::Idempotent) continue;
      ++witnesses;
      std::vector<LeftIdealSpec> subset;
      for (int k : w.subset) subset.push_back(cover.ideals[k]);
      const auto e = *w.generator;
      const auto sq = compose(e, e);
      if (sq.alpha != 0 || sq.diagram != e) o.fail(tag + " " + w.label + ": e^2 != e");
      for (const auto& rho : intersection_basis(*ctx, subset)) {
        const auto r = compose(rho, e);
        if (r.alpha != 0 || r.diagram != rho) o.fail(tag + " " + w.label + ": rho e != rho for " + rho.to_string());
      }
    }
  };
  for (const auto& f : kCoverFamilies)
    for (int n = 2; n <= 3; ++n) {
      const auto ctx = AlgebraContext::create(n, f, RingSpec::integers(), 1L);
      run(f, n, CoverSpec::standard(ctx).width());
    }
  for (int n = 2; n <= 3; ++n) run(FamilySpec::partition(), n, n - 1);
  if (o.pass) o.detail = std::to_string(covers) + " covers, " + std::to_string(witnesses) + " idempotent witnesses";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const std::vector<RingSpec> rings{RingSpec::integers(), RingSpec::modulo(2), RingSpec::modulo(3)};
  int complexes = 0;
  auto run = [&](const FamilySpec& f, int n, long delta, bool partition) {
    const auto ctx = AlgebraContext::create(n, f, RingSpec::integers(), delta);
    const auto mv = build_mv(CoverSpec::standard(ctx));
    const std::string tag = ctx->describe();
    for (int q = mv.complex.lo() + 1; q < mv.complex.hi(); ++q) {
      const auto d = kernels::omp::composition_defect(*mv.complex.differential(q), *mv.complex.differential(q + 1),
                                                      RingSpec::integers());
      if (d.nonzero_columns) o.fail(tag + ": d^2 != 0 at degree " + std::to_string(q + 1));
    }
    const int through = partition ? n - 1 : mv.width();
    for (const auto& ring : rings) {
      const auto e = check_mv_exactness(mv, ring, through);
      if (!e.surjective || !e.exactness.exact)
        o.fail(tag + " over " + ring.to_string() + ": not exact through " + std::to_string(through));
    }
    for (const auto& t : tensor_with_trivial(mv))
      if (t.p >= 1 && t.p <= through && !t.group.is_zero())
        o.fail(tag + ": 1 (x) C_" + std::to_string(t.p) + " = " + t.group.to_string(RingSpec::integers()));
    ++complexes;
  };
  for (const auto& f : kCoverFamilies)
    for (int n = 2; n <= 3; ++n)
      for (long delta : {0L, 1L, 2L}) {
        if (f.ignores_delta() && delta) continue;
        run(f, n, delta, false);
      }
  for (int n = 2; n <= 3; ++n)
    for (long delta : {0L, 1L}) run(FamilySpec::partition(), n, delta, true);
  if (o.pass) o.detail = std::to_string(complexes) + " complexes exact over Z, Z/2, Z/3";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::vector<RingSpec> rings{RingSpec::modulo(2), RingSpec::modulo(3), RingSpec::rationals()};
  int contexts = 0;
  for (int n = 2; n <= 3; ++n) {
    const int Q = n == 2 ? 5 : 4;
    for (const auto& ring : rings) {
      const auto gh = dims_of(group_homology(n, ring, Q));
      const auto gc = dims_of(group_cohomology(n, ring, Q));
      const long char_p = ring.kind() == RingKind::ModM ? static_cast<long>(ring.modulus()) : 3;
      for (const auto& f : kCoverFamilies)
        for (long delta = 0; delta < std::min(char_p, 3L); ++delta) {
          if (f.ignores_delta() && delta) continue;
          const auto ctx = AlgebraContext::create(n, f, ring, delta);
          const auto te = tor_ext(*ctx, Q);
          if (dims_of(te.tor) != gh) o.fail(ctx->describe() + ": Tor " + show(te.tor, ring));
          if (dims_of(te.ext) != gc) o.fail(ctx->describe() + ": Ext " + show(te.ext, ring));
          ++contexts;
        }
    }
  }
  const auto Z = RingSpec::integers();
  const HomologyGroup z{1, {}}, z2{0, {2}}, zero{};
  for (int n = 2; n <= 3; ++n) {
    const int Q = n == 2 ? 4 : 3;
    const auto oracle = group_homology(n, Z, Q);
    const auto expected = n == 2 ? std::vector<HomologyGroup>{z, z2, zero, z2} : std::vector<HomologyGroup>{z, z2, zero};
    if (oracle != expected) o.fail("S_" + std::to_string(n) + " oracle over Z " + show(oracle, Z));
    for (const auto& f : kCoverFamilies)
      for (long delta : {0L, 1L, 2L}) {
        if (f.ignores_delta() && delta) continue;
        const auto ctx = AlgebraContext::create(n, f, Z, delta);
        const auto tor = compute_tor(*ctx, Q);
        if (tor != expected) o.fail(ctx->describe() + ": Tor " + show(tor, Z));
        ++contexts;
      }
  }
  if (o.pass) o.detail = std::to_string(contexts) + " contexts match the S_n oracle";
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int n = 2; n <= 3; ++n)
    for (const auto& ring : {RingSpec::modulo(2), RingSpec::integers()}) {
      const auto ctx = AlgebraContext::create(n, FamilySpec::partition(), ring, 0L);
      const auto te = tor_ext(*ctx, n);
      const auto rh = compare(te.tor, group_homology(n, ring, n), n - 1, ring);
      const auto rc = compare(te.ext, group_cohomology(n, ring, n), n - 1, ring);
      if (!rh.match) o.fail(ctx->describe() + ": Tor " + show(te.tor, ring));
      if (!rc.match) o.fail(ctx->describe() + ": Ext " + show(te.ext, ring));
    }
  if (o.pass) o.detail = "P_2(0), P_3(0) over Z/2 and Z match for q <= n-1";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const std::pair<long, RingSpec> cases[] = {{1, RingSpec::modulo(2)}, {2, RingSpec::modulo(3)}};
  for (const auto& [delta, ring] : cases) {
    const auto ctx = AlgebraContext::create(2, FamilySpec::partition(), ring, delta);
    const auto te = tor_ext(*ctx, 5);
    if (!compare(te.ext, group_cohomology(2, ring, 5), 4, ring).match) o.fail(ctx->describe() + ": Ext " + show(te.ext, ring));
  }
  if (o.pass) o.detail = "P_2(1) over Z/2 and P_2(2) over Z/3 match H^q(S_2) for q <= 4";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto F2 = RingSpec::modulo(2);
  std::vector<std::vector<Index>> ext(4);
  for (int n = 1; n <= 3; ++n) {
    const auto ctx = AlgebraContext::create(n, FamilySpec::partition(), F2, 0L);
    ext[n] = dims_of(tor_ext(*ctx, 2).ext);
  }
  std::ostringstream s;
  for (int n = 2; n <= 3; ++n)
    for (int q = 0; 2 * q + 1 <= n; ++q) {
      if (ext[n][q] != ext[n - 1][q]) o.fail("n=" + std::to_string(n) + " q=" + std::to_string(q));
      s << (s.tellp() ? ", " : "") << "dim Ext^" << q << "(P_" << n << ") = " << ext[n][q];
    }
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome criterion9() {
  Outcome o;
  // Associativity.
  const auto p2 = enumerate_basis(2, FamilySpec::partition());
  auto assoc = [&](const Diagram& a, const Diagram& b, const Diagram& c) {
    const auto ab = compose(a, b), bc = compose(b, c);
    const auto l = compose(ab.diagram, c), r = compose(a, bc.diagram);
    return l.diagram == r.diagram && ab.alpha + l.alpha == bc.alpha + r.alpha;
  };
  int assoc_fail = 0;
  for (const auto& a : p2)
    for (const auto& b : p2)
      for (const auto& c : p2) assoc_fail += !assoc(a, b, c);
  const auto p3 = enumerate_basis(3, FamilySpec::partition());
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, p3.size() - 1);
  for (int t = 0; t < 1000; ++t) assoc_fail += !assoc(p3[pick(rng)], p3[pick(rng)], p3[pick(rng)]);
  if (assoc_fail) o.fail(std::to_string(assoc_fail) + " associativity failures");

  // Augmentation multiplicativity.
  int eps_fail = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& f : {FamilySpec::partition(), kT2, kT3, FamilySpec::totally_propagating(), FamilySpec::uniform_block()}) {
      const auto ctx = AlgebraContext::create(n, f, RingSpec::integers(), 2L);
      const auto eps = ctx->augmentation_row();
      for (std::size_t i = 0; i < ctx->dim(); ++i)
        for (std::size_t j = 0; j < ctx->dim(); ++j) {
          const auto p = ctx->product(i, j);
          eps_fail += ctx->delta_power(p.alpha) * eps[p.index] != eps[i] * eps[j];
        }
    }
  if (eps_fail) o.fail(std::to_string(eps_fail) + " augmentation failures");

  // Smith normal form.
  int snf_fail = 0;
  std::mt19937 mrng(99);
  std::uniform_int_distribution<int> dim(1, 6), val(-9, 9);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::vector<std::int64_t>> a(dim(mrng));
    const int cols = dim(mrng);
    for (auto& row : a) {
      row.resize(cols);
      for (auto& x : row) x = val(mrng) * (mrng() % 3 != 0);
    }
    const auto m = SparseMatrix::from_dense(a);
    const auto snf = smith_normal_form(m);
    bool ok = snf.rank == static_cast<Index>(snf.factors.size());
    for (std::size_t k = 0; k + 1 < snf.factors.size(); ++k) ok = ok && snf.factors[k + 1] % snf.factors[k] == 0;
    ok = ok && rank(m, RingSpec::rationals()) == snf.rank;
    ok = ok && smith_diagonal_dense(to_dense_mpz(m)) == snf.factors;
    ok = ok && eliminate(m, RingSpec::integers()).torsion == snf.torsion();
    snf_fail += !ok;
  }
  if (snf_fail) o.fail(std::to_string(snf_fail) + " SNF failures");

  if (!duality_failures.empty()) o.fail("duality fails for " + duality_failures.front());
  if (duality_contexts == 0) o.fail("no field contexts were computed");
  if (o.pass)
    o.detail = "associativity 3375 + 1000, augmentation exhaustive n <= 3, 500 SNF, duality on " +
               std::to_string(duality_contexts) + " contexts";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    Outcome (*run)();
    double limit_seconds;  // 0: no limit
  };
  const Criterion criteria[] = {{1, criterion1, 1},  {2, criterion2, 5}, {3, criterion3, 30},
                                {4, criterion4, 60}, {5, criterion5, 0}, {6, criterion6, 0},
                                {7, criterion7, 0},  {8, criterion8, 0}, {9, criterion9, 0}};
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "runtime %.2fs over the %.0fs limit", secs, c.limit_seconds);
      o.fail(buf);
    }
    failed += !o.pass;
    std::printf("criterion %d: %s (%.2fs) %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
