#include "diagalg/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>

#include "diagalg/error.hpp"

namespace diagalg {

namespace {

constexpr int kMaxN = 100;

void check_n(int n) {
  if (n < 1 || n > kMaxN) throw InvalidArgument("diagram size n must lie in 1.." + std::to_string(kMaxN));
}

// Union-find with path halving over a fixed number of nodes.
class DisjointSets {
 public:
  explicit DisjointSets(int size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

FamilySpec FamilySpec::tanabe(int r) {
  if (r < 1) throw InvalidArgument("Tanabe parameter r must be >= 1, got " + std::to_string(r));
  return {FamilyKind::Tanabe, r};
}

FamilySpec FamilySpec::parse(std::string_view text) {
  if (text == "P") return partition();
  if (text == "TPP") return totally_propagating();
  if (text == "U") return uniform_block();
  if (text.size() > 2 && text.substr(0, 2) == "T:") {
    int r = 0;
    auto digits = text.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw ParseError("bad Tanabe parameter in family '" + std::string(text) + "'", 2);
    return tanabe(r);
  }
  throw ParseError("unknown family '" + std::string(text) + "' (expected P, T:r, TPP or U)", 0);
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case FamilyKind::Partition: return "P";
    case FamilyKind::Tanabe: return "T:" + std::to_string(r);
    case FamilyKind::TotallyPropagating: return "TPP";
    case FamilyKind::UniformBlock: return "U";
  }
  return "?";
}

Diagram::Diagram(int n, std::vector<std::uint8_t> labels) : n_(n), labels_(std::move(labels)) {
  blocks_ = labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end()) + 1;
}

Diagram Diagram::from_labels(int n, std::span<const int> labels) {
  check_n(n);
  if (labels.size() != static_cast<std::size_t>(2 * n))
    throw InvalidArgument("expected " + std::to_string(2 * n) + " vertex labels");
  // Relabel in order of first appearance: block ids then follow minimal vertices.
  std::vector<std::uint8_t> canonical(labels.size());
  const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
  if (*lo >= 0 && *hi < 8 * n) {
    std::vector<int> remap(*hi + 1, -1);
    int next = 0;
    for (std::size_t v = 0; v < labels.size(); ++v) {
      int& r = remap[labels[v]];
      if (r < 0) r = next++;
      canonical[v] = static_cast<std::uint8_t>(r);
    }
    return Diagram(n, std::move(canonical));
  }
  std::vector<std::pair<int, std::uint8_t>> seen;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == labels[v]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[v], static_cast<std::uint8_t>(seen.size()));
      canonical[v] = seen.back().second;
    } else {
      canonical[v] = it->second;
    }
  }
  return Diagram(n, std::move(canonical));
}

Diagram Diagram::from_blocks(int n, const std::vector<std::vector<Vertex>>& blocks) {
  check_n(n);
  std::vector<int> labels(2 * n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InvalidArgument("empty block in diagram");
    for (const Vertex& v : blocks[b]) {
      if (v.index < 1 || v.index > n)
        throw InvalidArgument("vertex index " + std::to_string(v.index) + " outside 1.." + std::to_string(n));
      int& slot = labels[v.code(n)];
      if (slot != -1) throw InvalidArgument("vertex appears in two blocks");
      slot = static_cast<int>(b);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end())
    throw InvalidArgument("blocks do not cover all 2n vertices");
  return from_labels(n, labels);
}

Diagram Diagram::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("diagram '" + std::string(text) + "': " + what, pos);
  };
  auto read_int = [&]() {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) throw fail("expected integer");
    pos = ptr - text.data();
    return value;
  };

  const int n = read_int();
  if (n < 1 || n > kMaxN) throw fail("n out of range");
  if (pos >= text.size() || text[pos] != ':') throw fail("expected ':'");
  ++pos;

  std::vector<std::vector<Vertex>> blocks;
  while (true) {
    if (pos >= text.size() || text[pos] != '{') throw fail("expected '{'");
    ++pos;
    std::vector<Vertex> block;
    while (true) {
      const std::size_t start = pos;
      const int elem = read_int();
      if (elem == 0 || std::abs(elem) > n) {
        pos = start;
        throw fail("vertex " + std::to_string(elem) + " outside 1.." + std::to_string(n));
      }
      block.push_back(elem > 0 ? Vertex{Column::Left, elem} : Vertex{Column::Right, -elem});
      if (pos < text.size() && text[pos] == ' ') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        break;
      }
      throw fail("expected ' ' or '}'");
    }
    blocks.push_back(std::move(block));
    if (pos == text.size()) break;
    if (text[pos] != '|') throw fail("expected '|'");
    ++pos;
  }
  try {
    return from_blocks(n, blocks);
  } catch (const InvalidArgument& e) {
    throw ParseError("diagram '" + std::string(text) + "': " + e.what(), pos);
  }
}

Diagram Diagram::identity(int n) {
  check_n(n);
  std::vector<int> labels(2 * n);
  for (int i = 0; i < n; ++i) labels[i] = labels[n + i] = i;
  return from_labels(n, labels);
}

std::vector<std::vector<Vertex>> Diagram::blocks() const {
  std::vector<std::vector<Vertex>> out(blocks_);
  for (int code = 0; code < 2 * n_; ++code) out[labels_[code]].push_back(Vertex::from_code(n_, code));
  return out;
}

std::vector<ComponentStats> Diagram::component_stats() const {
  std::vector<ComponentStats> stats(blocks_, ComponentStats{0, 0, 0});
  for (int code = 0; code < 2 * n_; ++code) {
    auto& s = stats[labels_[code]];
    (code < n_ ? s.left : s.right) += 1;
  }
  for (auto& s : stats) s.kappa = std::abs(s.left - s.right);
  return stats;
}

int Diagram::propagating_count() const {
  int count = 0;
  for (const auto& s : component_stats())
    if (s.left > 0 && s.right > 0) ++count;
  return count;
}

std::vector<int> Diagram::as_permutation() const {
  if (!is_permutation()) throw InvalidArgument("diagram " + to_string() + " is not a permutation diagram");
  std::vector<int> sigma(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (labels_[n_ + j] == labels_[i]) sigma[i] = j + 1;
  return sigma;
}

bool Diagram::satisfies(const FamilySpec& family) const {
  if (family.kind == FamilyKind::Tanabe && family.r < 1) throw InvalidArgument("Tanabe parameter r must be >= 1");
  const auto stats = component_stats();
  switch (family.kind) {
    case FamilyKind::Partition:
      return true;
    case FamilyKind::Tanabe:
      return std::all_of(stats.begin(), stats.end(), [&](const auto& s) { return s.kappa % family.r == 0; });
    case FamilyKind::TotallyPropagating:
      return std::all_of(stats.begin(), stats.end(), [](const auto& s) { return s.left > 0 && s.right > 0; });
    case FamilyKind::UniformBlock:
      return std::all_of(stats.begin(), stats.end(), [](const auto& s) { return s.left == s.right; });
  }
  return false;
}

std::string Diagram::to_string() const {
  std::string out = std::to_string(n_) + ":";
  bool first_block = true;
  for (const auto& block : blocks()) {
    if (!first_block) out += '|';
    first_block = false;
    out += '{';
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(block[k].column == Column::Left ? block[k].index : -block[k].index);
    }
    out += '}';
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Diagram& d) { return os << d.to_string(); }

CompositionResult compose(const Diagram& d1, const Diagram& d2) {
  const int n = d1.n();
  if (d2.n() != n)
    throw InvalidArgument("cannot compose diagrams of sizes " + std::to_string(n) + " and " + std::to_string(d2.n()));

  // Nodes: 0..n-1 left column of d1, n..2n-1 middle column, 2n..3n-1 right column of d2.
  // A vertex code of d1 maps to the same node; a code of d2 is shifted by n.
  DisjointSets sets(3 * n);
  std::vector<int> first(2 * n);
  auto glue = [&](const Diagram& d, int shift) {
    std::fill(first.begin(), first.end(), -1);
    const auto labels = d.labels();
    for (int code = 0; code < 2 * n; ++code) {
      int& f = first[labels[code]];
      if (f < 0)
        f = code + shift;
      else
        sets.unite(f, code + shift);
    }
  };
  glue(d1, 0);
  glue(d2, n);

  std::vector<char> touches_outside(3 * n, 0);
  for (int v = 0; v < n; ++v) touches_outside[sets.find(v)] = 1;
  for (int v = 2 * n; v < 3 * n; ++v) touches_outside[sets.find(v)] = 1;

  std::vector<char> counted(3 * n, 0);
  int alpha = 0;
  for (int v = n; v < 2 * n; ++v) {
    const int root = sets.find(v);
    if (!touches_outside[root] && !counted[root]) {
      counted[root] = 1;
      ++alpha;
    }
  }

  std::vector<int> labels(2 * n);
  for (int v = 0; v < n; ++v) labels[v] = sets.find(v);
  for (int v = 0; v < n; ++v) labels[n + v] = sets.find(2 * n + v);
  return {alpha, Diagram::from_labels(n, labels)};
}

Diagram permutation_diagram(std::span<const int> sigma) {
  const int n = static_cast<int>(sigma.size());
  check_n(n);
  std::vector<int> labels(2 * n, -1);
  for (int i = 0; i < n; ++i) {
    const int j = sigma[i];
    if (j < 1 || j > n || labels[n + j - 1] != -1) throw InvalidArgument("not a permutation of 1..n");
    labels[i] = labels[n + j - 1] = i;
  }
  return Diagram::from_labels(n, labels);
}

std::size_t DiagramHash::operator()(const Diagram& d) const noexcept {
  std::size_t h = static_cast<std::size_t>(d.n()) * 0x9e3779b97f4a7c15ull;
  for (auto l : d.labels()) h = (h ^ l) * 0x100000001b3ull;
  return h;
}

}  // namespace diagalg
