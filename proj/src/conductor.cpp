#include "qth/conductor.hpp"

namespace qth {

template <class K>
PolyMatrix<K> extended_jacobian(const PolyList<K>& gens) {
  if (gens.empty()) throw InputError("the ideal has no generators");
  const auto& ring = gens.front().ring();
  const std::size_t k = gens.size();
  const std::size_t n = ring->nvars();
  PolyMatrix<K> m(k, std::vector<Polynomial<K>>(n + k * k, Polynomial<K>(ring)));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t v = 0; v < n; ++v) m[r][v] = gens[r].derivative(v);
    // B (x) identity(K): block c has B's entry c in row r of the block's column c*K + r
    for (std::size_t c = 0; c < k; ++c) m[r][n + c * k + r] = gens[c];
  }
  return m;
}

template <class K>
ConductorResult<K> canonical_conductor(const PolyList<K>& gens) {
  if (gens.empty()) throw InputError("the ideal has no generators");
  const auto& ring = gens.front().ring();
  const auto block =
      with_order(*ring, build_order(OrderKind::PositionUpBlock, WeightMatrix(), ring->nvars(), ring->ndep()));
  PolyList<K> moved;
  for (const auto& g : gens) moved.push_back(g.in_ring(block));
  const PolyMatrix<K> jac = extended_jacobian(moved);

  std::vector<ModuleVector<K>> columns(jac.front().size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& row : jac) columns[c].comps.push_back(row[c]);
  }
  const auto gb = module_gb(columns);

  auto entry = [&gb](std::size_t i, std::size_t j) -> const Polynomial<K>& { return gb[j].comps[i]; };
  auto usable = [&](std::size_t i, std::size_t j) { return !entry(i, j).is_zero() && entry(i, j).in_base(); };

  ConductorResult<K> out;
  Polynomial<K> product = Polynomial<K>::one(block);
  bool found = false;
  long i = static_cast<long>(jac.size()) - 1;
  long j = static_cast<long>(gb.size()) - 1;
  while (i >= 0 && j >= 0) {
    while (i >= 0 && j >= 0 && !usable(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) --j;
    Polynomial<K> row(block);
    while (i >= 0 && j >= 0 && usable(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
      row = poly_gcd(row, entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      --j;
    }
    if (!row.is_zero()) {
      found = true;
      product *= row;
      out.row_gcds.push_back(row.in_ring(ring));
    }
    --i;
  }
  if (!found) throw DegenerateError("no conductor element in the independent variables; the extension is degenerate");
  out.delta = product.monic().in_ring(ring);
  return out;
}

template PolyMatrix<Rational> extended_jacobian(const PolyList<Rational>&);
template PolyMatrix<ModP> extended_jacobian(const PolyList<ModP>&);
template ConductorResult<Rational> canonical_conductor(const PolyList<Rational>&);
template ConductorResult<ModP> canonical_conductor(const PolyList<ModP>&);

}  // namespace qth
