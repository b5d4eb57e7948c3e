#include "diagalg/cover.hpp"

#include <algorithm>

#include "diagalg/error.hpp"

namespace diagalg {

LeftIdealSpec LeftIdealSpec::K(int i) {
  if (i < 1) throw InvalidArgument("K(i) needs i >= 1");
  return {Kind::K, i, 0};
}

LeftIdealSpec LeftIdealSpec::L(int i, int j) {
  if (i < 1 || j <= i) throw InvalidArgument("L(i,j) needs 1 <= i < j");
  return {Kind::L, i, j};
}

bool LeftIdealSpec::contains(const Diagram& d) const {
  if (i > d.n() || j > d.n()) return false;
  const Vertex a{Column::Right, i};
  if (kind == Kind::L) return d.block_of(a) == d.block_of(Vertex{Column::Right, j});
  const int block = d.block_of(a);
  const auto labels = d.labels();
  return std::count(labels.begin(), labels.end(), block) == 1;
}

std::string LeftIdealSpec::label() const {
  if (kind == Kind::K) return "K(" + std::to_string(i) + ")";
  return "L(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

CoverSpec CoverSpec::standard(ContextPtr context) {
  CoverSpec cover{context, {}};
  const int n = context->n();
  if (context->family().is_partition_like())
    for (int i = 1; i <= n; ++i) cover.ideals.push_back(LeftIdealSpec::K(i));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) cover.ideals.push_back(LeftIdealSpec::L(i, j));
  return cover;
}

std::vector<std::size_t> target_indices(const AlgebraContext& ctx) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ctx.dim(); ++k)
    if (!ctx.is_permutation(k)) out.push_back(k);
  return out;
}

std::vector<std::size_t> ideal_indices(const AlgebraContext& ctx, const LeftIdealSpec& spec) {
  return intersection_indices(ctx, std::span<const LeftIdealSpec>(&spec, 1));
}

std::vector<Diagram> ideal_basis(const AlgebraContext& ctx, const LeftIdealSpec& spec) {
  return intersection_basis(ctx, std::span<const LeftIdealSpec>(&spec, 1));
}

std::vector<std::size_t> intersection_indices(const AlgebraContext& ctx, std::span<const LeftIdealSpec> subset) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ctx.dim(); ++k)
    if (std::all_of(subset.begin(), subset.end(), [&](const LeftIdealSpec& s) { return s.contains(ctx.diagram(k)); }))
      out.push_back(k);
  return out;
}

std::vector<Diagram> intersection_basis(const AlgebraContext& ctx, std::span<const LeftIdealSpec> subset) {
  std::vector<Diagram> out;
  for (auto k : intersection_indices(ctx, subset)) out.push_back(ctx.diagram(k));
  return out;
}

Diagram nu(int n, int a, int b) {
  if (a < 1 || b > n || a >= b) throw InvalidArgument("nu(a,b) needs 1 <= a < b <= n");
  std::vector<std::vector<Vertex>> blocks;
  blocks.push_back({{Column::Left, a}, {Column::Left, b}, {Column::Right, a}, {Column::Right, b}});
  for (int k = 1; k <= n; ++k)
    if (k != a && k != b) blocks.push_back({{Column::Left, k}, {Column::Right, k}});
  return Diagram::from_blocks(n, blocks);
}

Diagram isolator(int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw InvalidArgument("isolator(i,j) needs distinct i, j in 1..n");
  std::vector<std::vector<Vertex>> blocks;
  blocks.push_back({{Column::Left, i}, {Column::Left, j}, {Column::Right, j}});
  blocks.push_back({{Column::Right, i}});
  for (int k = 1; k <= n; ++k)
    if (k != i && k != j) blocks.push_back({{Column::Left, k}, {Column::Right, k}});
  return Diagram::from_blocks(n, blocks);
}

std::optional<Diagram> cover_generator(int n, std::span<const LeftIdealSpec> subset) {
  std::vector<int> isolated;
  for (const auto& s : subset)
    if (s.kind == LeftIdealSpec::Kind::K) isolated.push_back(s.i);
  int keep = 0;
  for (int k = 1; k <= n && keep == 0; ++k)
    if (std::find(isolated.begin(), isolated.end(), k) == isolated.end()) keep = k;
  if (!isolated.empty() && keep == 0) return std::nullopt;

  Diagram e = Diagram::identity(n);
  auto times = [&e](const Diagram& g) {
    auto [alpha, d] = compose(e, g);
    if (alpha != 0) throw ConsistencyError("generator product closed a middle component");
    e = d;
  };
  for (const auto& s : subset)
    if (s.kind == LeftIdealSpec::Kind::L) times(nu(n, s.i, s.j));
  std::sort(isolated.begin(), isolated.end());
  isolated.erase(std::unique(isolated.begin(), isolated.end()), isolated.end());
  for (int i : isolated) times(isolator(n, i, keep));
  return e;
}

std::string to_string(WitnessStatus status) {
  switch (status) {
    case WitnessStatus::Zero:
      return "zero";
    case WitnessStatus::Idempotent:
      return "idempotent";
    case WitnessStatus::Failed:
      return "failed";
  }
  return "";
}

namespace {

// Subsets of {0..w-1} of size 1..h, by size then lexicographically.
std::vector<std::vector<int>> subsets_up_to(int w, int h) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= h; ++size) {
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
  }
  return out;
}

struct SubsetOutcome {
  IntersectionWitness witness;
  std::vector<CoverFailure> failures;
};

SubsetOutcome check_subset(const CoverSpec& cover, const std::vector<int>& positions) {
  const auto& ctx = *cover.context;
  SubsetOutcome out;
  auto& w = out.witness;
  w.subset = positions;
  std::vector<LeftIdealSpec> subset;
  for (int p : positions) subset.push_back(cover.ideals[p]);
  w.label = "{";
  for (std::size_t k = 0; k < subset.size(); ++k) w.label += (k ? ", " : "") + subset[k].label();
  w.label += "}";

  const auto members = intersection_indices(ctx, subset);
  w.dim = members.size();
  if (members.empty()) {
    w.status = WitnessStatus::Zero;
    return out;
  }
  auto fail = [&](const std::string& check, const std::string& diagram) {
    out.failures.push_back({w.label, check, diagram});
    w.status = WitnessStatus::Failed;
  };

  const auto gen = cover_generator(ctx.n(), subset);
  if (!gen) {
    fail("no generator candidate", "");
    return out;
  }
  w.generator = gen;
  const auto gi = ctx.index_of(*gen);
  if (!gi) {
    fail("generator outside the algebra basis", gen->to_string());
    return out;
  }
  if (!std::binary_search(members.begin(), members.end(), *gi)) fail("generator outside the intersection", gen->to_string());
  const auto square = ctx.product(*gi, *gi);
  if (square.alpha != 0 || square.index != *gi) fail("e*e != e", gen->to_string());
  for (auto rho : members) {
    const auto p = ctx.product(rho, *gi);
    if (p.alpha != 0 || p.index != rho) fail("rho*e != rho", ctx.diagram(rho).to_string());
  }
  for (std::size_t b = 0; b < ctx.dim(); ++b) {
    const auto p = ctx.product(b, *gi);
    if (!std::binary_search(members.begin(), members.end(), p.index))
      fail("b*e outside the intersection", ctx.diagram(b).to_string());
  }
  if (out.failures.empty()) w.status = WitnessStatus::Idempotent;
  return out;
}

}  // namespace

CoverReport verify_cover(const CoverSpec& cover, std::optional<int> height_limit) {
  const auto& ctx = *cover.context;
  CoverReport report;
  report.width = cover.width();
  int height = ctx.family().is_partition_like() ? ctx.n() - 1 : report.width;
  height = std::min(height, report.width);
  if (height_limit) height = std::max(0, std::min(height, *height_limit));
  report.verified_height = height;

  // Sum of the ideals is I_{n-1}.
  std::vector<char> covered(ctx.dim(), 0);
  for (const auto& ideal : cover.ideals)
    for (auto k : ideal_indices(ctx, ideal)) {
      covered[k] = 1;
      if (ctx.is_permutation(k))
        report.failures.push_back({ideal.label(), "ideal meets a permutation diagram", ctx.diagram(k).to_string()});
    }
  report.covers = true;
  for (auto k : target_indices(ctx))
    if (!covered[k]) {
      report.covers = false;
      report.failures.push_back({"union", "diagram of I_{n-1} in no ideal", ctx.diagram(k).to_string()});
    }

  const auto subsets = subsets_up_to(report.width, height);
  std::vector<SubsetOutcome> outcomes(subsets.size());
  std::exception_ptr error;
  const auto count = static_cast<std::int64_t>(subsets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      outcomes[k] = check_subset(cover, subsets[k]);
    } catch (...) {
#pragma omp critical(diagalg_cover_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (auto& o : outcomes) {
    report.intersections.push_back(std::move(o.witness));
    for (auto& f : o.failures) report.failures.push_back(std::move(f));
  }
  return report;
}

}  // namespace diagalg
