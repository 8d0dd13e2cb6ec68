#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "ahlab/error.hpp"

namespace ah {

using cplx = std::complex<double>;
using BasePoint = std::shared_ptr<const std::vector<double>>;

inline BasePoint make_base(std::vector<double> p) {
  return std::make_shared<const std::vector<double>>(std::move(p));
}

/// Shared per-(dim, order) lookup tables for dense truncated Taylor
/// arithmetic. Multi-indices of total degree <= order over `dim` variables
/// are enumerated in graded lexicographic order.
class JetTables {
 public:
  static const JetTables& get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(indices_.size()); }

  const std::vector<uint8_t>& multi_index(int i) const { return indices_[i]; }
  int degree(int i) const { return degree_[i]; }
  double factorial(int i) const { return factorial_[i]; }

  /// Position of a multi-index in the enumeration, -1 if degree > order.
  int find(std::span<const int> mi) const;

  /// Index of the product monomial, -1 when the degrees overflow the order.
  int product(int i, int j) const { return product_[i * size() + j]; }

  /// For differentiation: index of multi_index(i) + e_var in THIS table,
  /// -1 on overflow.
  int shift_up(int i, int var) const { return shift_up_[i * dim_ + var]; }

 private:
  JetTables(int dim, int order);

  int dim_, order_;
  std::vector<std::vector<uint8_t>> indices_;
  std::vector<int> degree_;
  std::vector<double> factorial_;
  std::vector<int32_t> product_;
  std::vector<int32_t> shift_up_;
  std::map<uint64_t, int> lookup_;
};

/// Truncated multivariate Taylor expansion of a complex-valued function at a
/// chart point. Arithmetic is exact truncation at the jet's order; values are
/// immutable once built and safe to share.
class Jet {
 public:
  Jet() = default;

  static Jet constant(int dim, int order, BasePoint base, cplx value);
  /// The coordinate function x_var: constant term base[var], unit linear term.
  static Jet coordinate(int dim, int order, BasePoint base, int var);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const BasePoint& base() const { return base_; }
  const std::vector<cplx>& coeffs() const { return c_; }
  std::vector<cplx>& coeffs() { return c_; }

  cplx value() const { return c_.empty() ? cplx(0.0) : c_[0]; }

  /// Taylor coefficient for a multi-index (0 if absent is an error).
  cplx coefficient(std::span<const int> mi) const;
  /// True partial derivative value: multi_index! * coefficient.
  cplx partial(std::span<const int> mi) const;

  Jet operator-() const;
  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator/(const Jet& o) const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);

  Jet operator+(cplx s) const;
  Jet operator-(cplx s) const;
  Jet operator*(cplx s) const;

  Jet conj() const;
  Jet reciprocal() const;
  Jet pow_int(int k) const;
  Jet truncated(int new_order) const;
  /// d/dx_var as a jet of order-1.
  Jet derivative(int var) const;

  /// Composition with a univariate analytic series: returns
  /// sum_m series[m] * (this - value())^m truncated at this->order().
  /// series[m] must equal f^(m)(value()) / m!.
  Jet compose(std::span<const cplx> series) const;

  double max_abs_coeff() const;

  static void require_compatible(const Jet& a, const Jet& b);

 private:
  Jet(int dim, int order, BasePoint base)
      : dim_(dim), order_(order), base_(std::move(base)) {
    c_.assign(JetTables::get(dim_, order_).size(), cplx(0.0));
  }

  const JetTables& tables() const { return JetTables::get(dim_, order_); }

  int dim_ = 0;
  int order_ = -1;
  BasePoint base_;
  std::vector<cplx> c_;
};

inline Jet operator*(cplx s, const Jet& j) { return j * s; }

Jet exp(const Jet& j);
Jet sin(const Jet& j);
Jet cos(const Jet& j);
Jet sqrt(const Jet& j);

/// Directional derivative sum_a field[a] * d(f)/dx_a, truncated at
/// order(f) - 1. `field` holds the 2n coordinate components of a vector
/// field as jets of order >= order(f) - 1.
Jet apply_vector_field(std::span<const Jet> field, const Jet& f);

}  // namespace ah
