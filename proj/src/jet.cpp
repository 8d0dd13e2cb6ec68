#include "ahlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace ah {

namespace {

// Enumerate multi-indices of total degree <= order in graded lex order.
// Within a degree the leftmost variable's exponent descends first, so the
// enumeration for a lower order is a prefix of the one for a higher order.
void enumerate(int dim, int order, std::vector<std::vector<uint8_t>>& out) {
  for (int deg = 0; deg <= order; ++deg) {
    std::vector<int> comp(dim, 0);
    comp[0] = deg;
    while (true) {
      out.emplace_back(comp.begin(), comp.end());
      int k = dim - 2;
      while (k >= 0 && comp[k] == 0) --k;
      if (k < 0) break;
      --comp[k];
      int rest = deg;
      for (int t = 0; t <= k; ++t) rest -= comp[t];
      comp[k + 1] = rest;
      for (int t = k + 2; t < dim; ++t) comp[t] = 0;
    }
  }
}

uint64_t pack(std::span<const int> mi) {
  uint64_t key = 0;
  for (size_t a = 0; a < mi.size(); ++a) key |= uint64_t(mi[a] & 0xFF) << (8 * a);
  return key;
}

uint64_t pack8(const std::vector<uint8_t>& mi) {
  uint64_t key = 0;
  for (size_t a = 0; a < mi.size(); ++a) key |= uint64_t(mi[a]) << (8 * a);
  return key;
}

}  // namespace

JetTables::JetTables(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > 8 || order < 0 || order > 8)
    fail(ErrorKind::usage, "jet dimension/order out of supported range");
  if (dim == 1) {
    for (int d = 0; d <= order; ++d) indices_.push_back({uint8_t(d)});
  } else {
    enumerate(dim, order, indices_);
  }
  const int N = size();
  degree_.resize(N);
  factorial_.resize(N);
  for (int i = 0; i < N; ++i) {
    int deg = 0;
    double fact = 1.0;
    for (int a = 0; a < dim_; ++a) {
      deg += indices_[i][a];
      for (int t = 2; t <= indices_[i][a]; ++t) fact *= t;
    }
    degree_[i] = deg;
    factorial_[i] = fact;
    lookup_[pack8(indices_[i])] = i;
  }
  product_.assign(size_t(N) * N, -1);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (degree_[i] + degree_[j] > order_) continue;
      std::vector<uint8_t> sum(dim_);
      for (int a = 0; a < dim_; ++a) sum[a] = indices_[i][a] + indices_[j][a];
      product_[size_t(i) * N + j] = lookup_.at(pack8(sum));
    }
  }
  shift_up_.assign(size_t(N) * dim_, -1);
  for (int i = 0; i < N; ++i) {
    for (int a = 0; a < dim_; ++a) {
      if (degree_[i] + 1 > order_) continue;
      std::vector<uint8_t> up = indices_[i];
      ++up[a];
      shift_up_[size_t(i) * dim_ + a] = lookup_.at(pack8(up));
    }
  }
}

const JetTables& JetTables::get(int dim, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim, order}];
  if (!slot) slot.reset(new JetTables(dim, order));
  return *slot;
}

int JetTables::find(std::span<const int> mi) const {
  if (static_cast<int>(mi.size()) != dim_) return -1;
  int deg = 0;
  for (int v : mi) {
    if (v < 0) return -1;
    deg += v;
  }
  if (deg > order_) return -1;
  auto it = lookup_.find(pack(mi));
  return it == lookup_.end() ? -1 : it->second;
}

Jet Jet::constant(int dim, int order, BasePoint base, cplx value) {
  Jet j(dim, order, std::move(base));
  j.c_[0] = value;
  return j;
}

Jet Jet::coordinate(int dim, int order, BasePoint base, int var) {
  if (var < 0 || var >= dim) fail(ErrorKind::usage, "coordinate index out of range");
  Jet j(dim, order, std::move(base));
  j.c_[0] = (*j.base_)[var];
  if (order >= 1) {
    std::vector<int> mi(dim, 0);
    mi[var] = 1;
    j.c_[j.tables().find(mi)] = 1.0;
  }
  return j;
}

void Jet::require_compatible(const Jet& a, const Jet& b) {
  if (a.dim_ != b.dim_ || a.order_ != b.order_)
    fail(ErrorKind::usage, "jet arithmetic requires matching dimension and order");
  if (a.base_ != b.base_) {
    if (!a.base_ || !b.base_ || *a.base_ != *b.base_)
      fail(ErrorKind::usage, "jet arithmetic requires a common base point");
  }
}

cplx Jet::coefficient(std::span<const int> mi) const {
  const int idx = tables().find(mi);
  if (idx < 0) fail(ErrorKind::usage, "multi-index degree exceeds jet order");
  return c_[idx];
}

cplx Jet::partial(std::span<const int> mi) const {
  const int idx = tables().find(mi);
  if (idx < 0) fail(ErrorKind::usage, "multi-index degree exceeds jet order");
  return c_[idx] * tables().factorial(idx);
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet Jet::operator+(const Jet& o) const {
  require_compatible(*this, o);
  Jet r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  require_compatible(*this, o);
  Jet r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  require_compatible(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_compatible(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet Jet::operator*(const Jet& o) const {
  require_compatible(*this, o);
  const JetTables& t = tables();
  const int N = t.size();
  Jet r(dim_, order_, base_);
  for (int i = 0; i < N; ++i) {
    if (c_[i] == cplx(0.0)) continue;
    const cplx a = c_[i];
    for (int j = 0; j < N; ++j) {
      const int k = t.product(i, j);
      if (k < 0) continue;
      r.c_[k] += a * o.c_[j];
    }
  }
  return r;
}

Jet Jet::operator/(const Jet& o) const { return *this * o.reciprocal(); }

Jet Jet::operator+(cplx s) const {
  Jet r = *this;
  r.c_[0] += s;
  return r;
}

Jet Jet::operator-(cplx s) const {
  Jet r = *this;
  r.c_[0] -= s;
  return r;
}

Jet Jet::operator*(cplx s) const {
  Jet r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

Jet Jet::conj() const {
  Jet r = *this;
  for (auto& v : r.c_) v = std::conj(v);
  return r;
}

Jet Jet::compose(std::span<const cplx> series) const {
  // Horner evaluation in the nilpotent part (this - value()).
  Jet u = *this;
  u.c_[0] = 0.0;
  Jet r = Jet::constant(dim_, order_, base_, series.empty() ? cplx(0.0) : series.back());
  for (int m = static_cast<int>(series.size()) - 2; m >= 0; --m) {
    r = r * u;
    r.c_[0] += series[m];
  }
  return r;
}

Jet Jet::reciprocal() const {
  const cplx u0 = value();
  if (std::abs(u0) < 1e-300)
    fail(ErrorKind::usage, "reciprocal of a jet with zero constant term");
  std::vector<cplx> s(order_ + 1);
  cplx p = 1.0 / u0;
  for (int m = 0; m <= order_; ++m) {
    s[m] = (m % 2 == 0 ? p : -p);
    p /= u0;
  }
  return compose(s);
}

Jet Jet::pow_int(int k) const {
  if (k < 0) return reciprocal().pow_int(-k);
  Jet r = Jet::constant(dim_, order_, base_, 1.0);
  Jet b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order_) fail(ErrorKind::usage, "cannot extend a jet's order");
  if (new_order == order_) return *this;
  Jet r(dim_, new_order, base_);
  // prefix-stable enumeration: lower-order coefficients share indices
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i];
  return r;
}

Jet Jet::derivative(int var) const {
  if (order_ < 1) fail(ErrorKind::usage, "cannot differentiate an order-0 jet");
  if (var < 0 || var >= dim_) fail(ErrorKind::usage, "derivative variable out of range");
  Jet r(dim_, order_ - 1, base_);
  const JetTables& high = tables();
  for (size_t i = 0; i < r.c_.size(); ++i) {
    const int src = high.shift_up(static_cast<int>(i), var);
    r.c_[i] = c_[src] * double(high.multi_index(static_cast<int>(i))[var] + 1);
  }
  return r;
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

Jet exp(const Jet& j) {
  const cplx e = std::exp(j.value());
  std::vector<cplx> s(j.order() + 1);
  double f = 1.0;
  for (int m = 0; m <= j.order(); ++m) {
    if (m > 0) f *= m;
    s[m] = e / f;
  }
  return j.compose(s);
}

Jet sin(const Jet& j) {
  const cplx sv = std::sin(j.value()), cv = std::cos(j.value());
  std::vector<cplx> s(j.order() + 1);
  double f = 1.0;
  for (int m = 0; m <= j.order(); ++m) {
    if (m > 0) f *= m;
    const cplx d = (m % 4 == 0) ? sv : (m % 4 == 1) ? cv : (m % 4 == 2) ? -sv : -cv;
    s[m] = d / f;
  }
  return j.compose(s);
}

Jet cos(const Jet& j) {
  const cplx sv = std::sin(j.value()), cv = std::cos(j.value());
  std::vector<cplx> s(j.order() + 1);
  double f = 1.0;
  for (int m = 0; m <= j.order(); ++m) {
    if (m > 0) f *= m;
    const cplx d = (m % 4 == 0) ? cv : (m % 4 == 1) ? -sv : (m % 4 == 2) ? -cv : sv;
    s[m] = d / f;
  }
  return j.compose(s);
}

Jet sqrt(const Jet& j) {
  const cplx u0 = j.value();
  if (std::abs(u0) < 1e-300)
    fail(ErrorKind::usage, "sqrt of a jet with zero constant term");
  // series[m] = binom(1/2, m) * u0^(1/2 - m)
  std::vector<cplx> s(j.order() + 1);
  cplx b = 1.0;
  cplx p = std::sqrt(u0);
  for (int m = 0; m <= j.order(); ++m) {
    s[m] = b * p;
    b *= (0.5 - double(m)) / double(m + 1);
    p /= u0;
  }
  return j.compose(s);
}

Jet apply_vector_field(std::span<const Jet> field, const Jet& f) {
  if (f.order() < 1)
    fail(ErrorKind::usage, "apply_vector_field needs a jet of order >= 1");
  if (static_cast<int>(field.size()) != f.dim())
    fail(ErrorKind::usage, "vector field component count must match jet dimension");
  const int k = f.order() - 1;
  Jet acc;
  for (int a = 0; a < f.dim(); ++a) {
    if (field[a].order() < k)
      fail(ErrorKind::usage, "vector field coefficients have insufficient order");
    Jet term = field[a].truncated(k) * f.derivative(a);
    if (a == 0)
      acc = std::move(term);
    else
      acc += term;
  }
  return acc;
}

}  // namespace ah
