#include "diagalg/complex.hpp"

#include <exception>
#include <map>

#include "diagalg/elimination.hpp"
#include "diagalg/error.hpp"
#include "diagalg/kernels.hpp"

namespace diagalg {

std::string HomologyGroup::to_string(const RingSpec& ring) const {
  std::string out;
  auto append = [&out](const std::string& part) {
    if (!out.empty()) out += " + ";
    out += part;
  };
  if (free_rank > 0) {
    std::string base = ring.to_string();
    if (free_rank == 1)
      append(base);
    else
      append((base.size() > 1 ? "(" + base + ")" : base) + "^" + std::to_string(free_rank));
  }
  for (const auto& t : torsion) append("Z/" + t.get_str());
  return out.empty() ? "0" : out;
}

ChainComplex::ChainComplex(const RingSpec& ring, int lo, std::vector<Index> dims, std::vector<MatrixPtr> differentials,
                           bool validate_now)
    : ring_(ring), lo_(lo), dims_(std::move(dims)), differentials_(std::move(differentials)) {
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (differentials_.size() != expected)
    throw InvalidArgument("chain complex with " + std::to_string(dims_.size()) + " modules needs " +
                          std::to_string(expected) + " differentials, got " + std::to_string(differentials_.size()));
  for (auto d : dims_)
    if (d < 0) throw InvalidArgument("negative module rank");
  for (std::size_t k = 0; k < differentials_.size(); ++k) {
    const int q = lo_ + 1 + static_cast<int>(k);
    const auto& m = differentials_[k];
    if (!m) throw InvalidArgument("missing differential d_" + std::to_string(q));
    if (m->rows() != dims_[k] || m->cols() != dims_[k + 1])
      throw InvalidArgument("d_" + std::to_string(q) + " has shape " + std::to_string(m->rows()) + " x " +
                            std::to_string(m->cols()) + ", expected " + std::to_string(dims_[k]) + " x " +
                            std::to_string(dims_[k + 1]));
  }
  if (validate_now) validate();
}

Index ChainComplex::dim(int q) const {
  if (q < lo_ || q > hi()) return 0;
  return dims_[q - lo_];
}

MatrixPtr ChainComplex::differential(int q) const {
  if (q <= lo_ || q > hi()) return nullptr;
  return differentials_[q - lo_ - 1];
}

ChainComplex ChainComplex::over(const RingSpec& ring) const {
  ChainComplex c = *this;
  c.ring_ = ring;
  return c;
}

void ChainComplex::validate() const {
  for (int q = lo_ + 2; q <= hi(); ++q) {
    const auto report = kernels::omp::composition_defect(*differential(q - 1), *differential(q), ring_);
    if (report.nonzero_columns)
      throw ConsistencyError("d_" + std::to_string(q - 1) + " d_" + std::to_string(q) + " != 0 (" +
                             std::to_string(report.nonzero_columns) + " nonzero columns, first " +
                             std::to_string(report.first_bad_column) + ")");
  }
}

namespace {

void require_homology_ring(const RingSpec& ring) {
  if (!ring.supports_homology())
    throw UnsupportedRing("homology over " + ring.to_string() + " is unsupported: need Z or a field");
}

// Reduces each requested nonzero differential once. Wide matrices are
// transposed first: rank and invariant factors are transpose invariant and
// the echelon form is much cheaper with fewer columns.
std::map<int, EliminationResult> reduce_differentials(const ChainComplex& c, int from, int to) {
  std::vector<int> degrees;
  for (int q = from; q <= to; ++q)
    if (c.differential(q)) degrees.push_back(q);

  std::vector<MatrixPtr> work(degrees.size());
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    auto m = c.differential(degrees[k]);
    if (m->cols() > m->rows())
      work[k] = std::make_shared<SparseMatrix>(kernels::omp::transpose(*m));
    else
      work[k] = m;
  }

  std::vector<EliminationResult> results(degrees.size());
  std::exception_ptr error;
  const auto count = static_cast<std::int64_t>(degrees.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      results[k] = eliminate(*work[k], c.ring());
    } catch (...) {
#pragma omp critical(diagalg_reduce_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::map<int, EliminationResult> out;
  for (std::size_t k = 0; k < degrees.size(); ++k) out.emplace(degrees[k], std::move(results[k]));
  return out;
}

Index rank_of(const std::map<int, EliminationResult>& r, int q) {
  auto it = r.find(q);
  return it == r.end() ? 0 : it->second.rank;
}

const std::vector<mpz_class>& torsion_of(const std::map<int, EliminationResult>& r, int q) {
  static const std::vector<mpz_class> none;
  auto it = r.find(q);
  return it == r.end() ? none : it->second.torsion;
}

}  // namespace

HomologyGroup ChainComplex::homology(int q) const { return homology_range(q, q).front(); }

std::vector<HomologyGroup> ChainComplex::homology_range(int from, int to) const { return both_ranges(from, to).first; }

std::vector<HomologyGroup> ChainComplex::cohomology_range(int from, int to) const {
  return both_ranges(from, to).second;
}

std::pair<std::vector<HomologyGroup>, std::vector<HomologyGroup>> ChainComplex::both_ranges(int from, int to) const {
  require_homology_ring(ring_);
  std::pair<std::vector<HomologyGroup>, std::vector<HomologyGroup>> out;
  if (to < from) return out;
  const auto reduced = reduce_differentials(*this, from, to + 1);
  for (int q = from; q <= to; ++q) {
    HomologyGroup h;
    h.free_rank = dim(q) - rank_of(reduced, q) - rank_of(reduced, q + 1);
    // H_q has the torsion of coker d_{q+1}; H^q = ker d_{q+1}^T / im d_q^T
    // has the torsion of coker d_q^T.
    HomologyGroup c = h;
    h.torsion = torsion_of(reduced, q + 1);
    c.torsion = torsion_of(reduced, q);
    out.first.push_back(std::move(h));
    out.second.push_back(std::move(c));
  }
  return out;
}

ChainComplex ChainComplex::dualize() const {
  if (dims_.empty()) return ChainComplex(ring_, 0, {}, {}, false);
  std::vector<Index> dims(dims_.rbegin(), dims_.rend());
  std::vector<MatrixPtr> diffs;
  // D_p = C_{-p}^*, and d^D_p = (d_{1-p})^T for -hi < p <= -lo.
  for (int p = -hi() + 1; p <= -lo_; ++p)
    diffs.push_back(std::make_shared<SparseMatrix>(kernels::omp::transpose(*differential(1 - p))));
  return ChainComplex(ring_, -hi(), std::move(dims), std::move(diffs), false);
}

ExactnessReport ChainComplex::check_exactness(int from, int to) const {
  ExactnessReport report;
  const auto groups = homology_range(from, to);
  for (int q = from; q <= to; ++q)
    if (!groups[q - from].is_zero()) {
      report.exact = false;
      report.first_failing_degree = q;
      break;
    }
  return report;
}

}  // namespace diagalg
