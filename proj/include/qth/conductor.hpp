#pragma once

#include <vector>

#include "qth/groebner.hpp"

namespace qth {

template <class K>
using PolyMatrix = std::vector<std::vector<Polynomial<K>>>;

template <class K>
struct ConductorResult {
  Polynomial<K> delta;     // monic, in the independent variables only
  PolyList<K> row_gcds;    // one per row that contributed, bottom row first
};

/// transpose(jacobian B) | B (x) identity: one row per generator b_k, the
/// partial derivatives of b_k in every ring variable, then K blocks of K
/// columns holding b_k on the diagonal.
template <class K>
PolyMatrix<K> extended_jacobian(const PolyList<K>& gens);

/// Column-reduces the extended Jacobian under position-up over the block
/// order (dependent block above independent block), then multiplies the row
/// gcds of the trailing runs of entries lying in P, scanning from the bottom
/// right. Throws DegenerateError when no entry lies in P.
template <class K>
ConductorResult<K> canonical_conductor(const PolyList<K>& gens);

}  // namespace qth
