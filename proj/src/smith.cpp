#include "diagalg/smith.hpp"

#include <algorithm>

#include "diagalg/elimination.hpp"

namespace diagalg {

std::vector<mpz_class> SNFResult::torsion() const {
  std::vector<mpz_class> out;
  for (const auto& f : factors)
    if (f > 1) out.push_back(f);
  return out;
}

namespace {

int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

struct Pos {
  std::size_t row;
  std::size_t col;
};

// Smallest nonzero |a_ij| with i, j >= t.
bool find_min_pivot(const DenseIntMatrix& a, std::size_t t, Pos& where) {
  bool found = false;
  mpz_class best;
  for (std::size_t i = t; i < a.size(); ++i)
    for (std::size_t j = t; j < a[i].size(); ++j) {
      if (sgn(a[i][j]) == 0) continue;
      if (!found || cmpabs(a[i][j], best) < 0) {
        best = a[i][j];
        where = {i, j};
        found = true;
      }
    }
  return found;
}

void swap_to_pivot(DenseIntMatrix& a, std::size_t t, Pos p) {
  if (p.row != t) std::swap(a[p.row], a[t]);
  if (p.col != t)
    for (auto& row : a) std::swap(row[p.col], row[t]);
}

}  // namespace

std::vector<mpz_class> smith_diagonal_dense(DenseIntMatrix a) {
  std::vector<mpz_class> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  mpz_class q;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    Pos p{};
    if (!find_min_pivot(a, t, p)) break;
    swap_to_pivot(a, t, p);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived in row t or column t.
        Pos best{t, t};
        for (std::size_t i = t + 1; i < rows; ++i)
          if (sgn(a[i][t]) != 0 && cmpabs(a[i][t], a[best.row][best.col]) < 0) best = {i, t};
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(a[t][j]) != 0 && cmpabs(a[t][j], a[best.row][best.col]) < 0) best = {t, j};
        swap_to_pivot(a, t, best);
        continue;
      }
      // Row and column are clear; the pivot must divide everything left.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(a[i][j]) != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

SNFResult smith_normal_form(const ColumnSource& m) {
  SNFResult out;
  if (m.rows() < 64 && m.cols() < 64)
    out.factors = smith_diagonal_dense(to_dense_mpz(m));
  else
    out.factors = sparse_invariant_factors(m);
  out.rank = static_cast<Index>(out.factors.size());
  return out;
}

}  // namespace diagalg
