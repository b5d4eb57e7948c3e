#pragma once

#include <vector>

#include <gmpxx.h>

#include "diagalg/coeff.hpp"
#include "diagalg/sparse_matrix.hpp"

namespace diagalg {

// Rank of a matrix, plus its nontrivial invariant factors when the ring is Z.
struct EliminationResult {
  Index rank = 0;
  std::vector<mpz_class> torsion;
};

// Column echelon reduction that streams columns from the source and pivots on
// the largest row index of each column. Over Z the reduction uses unimodular
// column operations (extended gcd when the leading entries do not divide), so
// the pivot count is the rank and the invariant factors are recovered from the
// echelon form. Over Q the rank is the integer rank. Over a prime field the
// entries are reduced modulo p.
//
// Throws UnsupportedRing for composite moduli.
EliminationResult eliminate(const ColumnSource& m, const RingSpec& ring);

inline Index rank(const ColumnSource& m, const RingSpec& ring) { return eliminate(m, ring).rank; }

// All invariant factors over Z (ones included), via the echelon form.
std::vector<mpz_class> sparse_invariant_factors(const ColumnSource& m);

}  // namespace diagalg
