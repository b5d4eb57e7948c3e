#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diagalg {

enum class Column : std::uint8_t { Left = 0, Right = 1 };

// Vertex i (Left) or i-bar (Right), 1 <= index <= n.
struct Vertex {
  Column column;
  int index;

  // Position in the fixed total order (Left,1) < ... < (Left,n) < (Right,1) < ... < (Right,n).
  int code(int n) const { return column == Column::Left ? index - 1 : n + index - 1; }
  static Vertex from_code(int n, int code) {
    return code < n ? Vertex{Column::Left, code + 1} : Vertex{Column::Right, code - n + 1};
  }

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct ComponentStats {
  int left;
  int right;
  int kappa;

  friend bool operator==(const ComponentStats&, const ComponentStats&) = default;
};

enum class FamilyKind { Partition, Tanabe, TotallyPropagating, UniformBlock };

// Which subalgebra of the partition algebra. Syntax: "P", "T:r", "TPP", "U".
struct FamilySpec {
  FamilyKind kind = FamilyKind::Partition;
  int r = 1;  // only meaningful for Tanabe

  static FamilySpec partition() { return {FamilyKind::Partition, 1}; }
  static FamilySpec tanabe(int r);
  static FamilySpec totally_propagating() { return {FamilyKind::TotallyPropagating, 1}; }
  static FamilySpec uniform_block() { return {FamilyKind::UniformBlock, 1}; }
  static FamilySpec parse(std::string_view text);

  // Tanabe with r = 1 is the partition algebra itself.
  bool is_partition_like() const { return kind == FamilyKind::Partition || (kind == FamilyKind::Tanabe && r == 1); }
  // Products never produce closed middle components, so delta plays no role.
  bool ignores_delta() const {
    return kind == FamilyKind::TotallyPropagating || kind == FamilyKind::UniformBlock;
  }

  std::string to_string() const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

// A partition n-diagram: a set partition of the 2n vertices. Stored as the
// restricted growth string of block labels over the fixed vertex order, which
// is exactly the canonical form (blocks numbered by their minimal vertex).
class Diagram {
 public:
  Diagram() = default;

  // Any labelling of the 2n vertex codes; relabelled to canonical form.
  static Diagram from_labels(int n, std::span<const int> labels);
  static Diagram from_blocks(int n, const std::vector<std::vector<Vertex>>& blocks);
  // Grammar: n ":" block ("|" block)*, block = "{" elem (" " elem)* "}",
  // elem = i for Left i and -i for Right i.
  static Diagram parse(std::string_view text);
  static Diagram identity(int n);

  int n() const noexcept { return n_; }
  int block_count() const noexcept { return blocks_; }
  // Canonical block label of a vertex.
  int block_of(Vertex v) const { return labels_[v.code(n_)]; }
  std::span<const std::uint8_t> labels() const noexcept { return labels_; }

  std::vector<std::vector<Vertex>> blocks() const;
  std::vector<ComponentStats> component_stats() const;
  int propagating_count() const;
  bool is_permutation() const { return propagating_count() == n_; }
  // sigma[i-1] = j when {i, j-bar} is a block. Throws unless is_permutation().
  std::vector<int> as_permutation() const;
  bool satisfies(const FamilySpec& family) const;

  std::string to_string() const;

  friend bool operator==(const Diagram& a, const Diagram& b) { return a.n_ == b.n_ && a.labels_ == b.labels_; }
  friend std::strong_ordering operator<=>(const Diagram& a, const Diagram& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.labels_ <=> b.labels_;
  }

 private:
  Diagram(int n, std::vector<std::uint8_t> labels);

  int n_ = 0;
  int blocks_ = 0;
  std::vector<std::uint8_t> labels_;
};

std::ostream& operator<<(std::ostream& os, const Diagram& d);

// d1 d2 = delta^alpha d3, alpha counting closed components in the middle column.
struct CompositionResult {
  int alpha;
  Diagram diagram;
};

CompositionResult compose(const Diagram& d1, const Diagram& d2);

inline std::vector<ComponentStats> component_stats(const Diagram& d) { return d.component_stats(); }
inline int propagating_count(const Diagram& d) { return d.propagating_count(); }
inline bool is_permutation(const Diagram& d) { return d.is_permutation(); }
inline std::vector<int> as_permutation(const Diagram& d) { return d.as_permutation(); }
inline bool family_predicate(const Diagram& d, const FamilySpec& family) { return d.satisfies(family); }

// The permutation diagram {i, sigma(i)-bar}; sigma uses 1-based values.
Diagram permutation_diagram(std::span<const int> sigma);

struct DiagramHash {
  std::size_t operator()(const Diagram& d) const noexcept;
};

}  // namespace diagalg
