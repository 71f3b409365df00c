#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qth/coefficient.hpp"
#include "qth/order.hpp"

namespace qth {

/// Polynomial ring K[dependent vars; independent vars] with an active
/// monomial order and an (optional) weight matrix.
template <class K>
class Ring {
 public:
  Ring(std::vector<std::string> names, std::size_t ndep, MonomialOrder order, WeightMatrix weights, K unit)
      : names_(std::move(names)), ndep_(ndep), order_(std::move(order)), weights_(std::move(weights)),
        unit_(std::move(unit)) {
    if (ndep_ > names_.size()) throw DimensionError("more dependent variables than variables");
    if (order_.nvars() != names_.size()) throw DimensionError("order matrix does not match the variable count");
    if (!weights_.empty() && weights_.cols() != names_.size()) {
      throw DimensionError("weight matrix does not match the variable count");
    }
    if (!unit_.is_one()) throw DomainError("ring unit must be one");
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t nvars() const { return names_.size(); }
  std::size_t ndep() const { return ndep_; }
  std::size_t nindep() const { return names_.size() - ndep_; }
  const MonomialOrder& order() const { return order_; }
  const WeightMatrix& weights() const { return weights_; }
  const K& unit() const { return unit_; }
  K zero() const { return unit_.zero_like(); }
  K scalar(const mpq_class& v) const { return K::from_rational(v, unit_); }
  CoefficientDomain domain() const { return unit_.domain(); }

  /// Index of the named variable, or -1.
  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
  /// True when the monomial involves no dependent variable, i.e. lies in P.
  bool in_base(const Monomial& m) const {
    for (std::size_t i = 0; i < ndep_; ++i) {
      if (m[i] != 0) return false;
    }
    return true;
  }
  Monomial one_monomial() const { return Monomial(nvars()); }

  bool same_as(const Ring& o) const {
    return this == &o ||
           (names_ == o.names_ && ndep_ == o.ndep_ && order_ == o.order_ && domain() == o.domain());
  }

 private:
  std::vector<std::string> names_;
  std::size_t ndep_;
  MonomialOrder order_;
  WeightMatrix weights_;
  K unit_;
};

template <class K>
using RingPtr = std::shared_ptr<const Ring<K>>;

template <class K>
RingPtr<K> make_ring(std::vector<std::string> names, std::size_t ndep, MonomialOrder order, WeightMatrix weights,
                     K unit) {
  return std::make_shared<const Ring<K>>(std::move(names), ndep, std::move(order), std::move(weights),
                                         std::move(unit));
}

/// Builds the order of the given kind from the weights, then the ring.
template <class K>
RingPtr<K> make_ring(std::vector<std::string> names, std::size_t ndep, OrderKind kind, WeightMatrix weights, K unit) {
  MonomialOrder order = build_order(kind, weights, names.size(), ndep);
  return make_ring<K>(std::move(names), ndep, std::move(order), std::move(weights), std::move(unit));
}

/// Same variables and weights, different coefficient domain.
template <class K2, class K>
RingPtr<K2> with_coefficients(const Ring<K>& r, K2 unit) {
  return make_ring<K2>(r.names(), r.ndep(), r.order(), r.weights(), std::move(unit));
}

/// Same variables, weights and coefficients, different order.
template <class K>
RingPtr<K> with_order(const Ring<K>& r, MonomialOrder order) {
  return make_ring<K>(r.names(), r.ndep(), std::move(order), r.weights(), r.unit());
}

}  // namespace qth
