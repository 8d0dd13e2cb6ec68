#include "ahlab/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace ah {

namespace {

void gen_combos(int dim, int degree, std::vector<std::vector<int>>& out) {
  if (degree == 0) {
    out.push_back({});
    return;
  }
  std::vector<int> c(degree);
  for (int i = 0; i < degree; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int t = degree - 1;
    while (t >= 0 && c[t] == dim - degree + t) --t;
    if (t < 0) break;
    ++c[t];
    for (int u = t + 1; u < degree; ++u) c[u] = c[u - 1] + 1;
  }
}

// permutations with signs, by degree (degree <= 4 is plenty here)
const std::vector<std::pair<std::vector<int>, int>>& perms(int d) {
  static std::map<int, std::vector<std::pair<std::vector<int>, int>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& v = cache[d];
  if (v.empty()) {
    std::vector<int> p(d);
    for (int i = 0; i < d; ++i) p[i] = i;
    do {
      int inv = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          if (p[i] > p[j]) ++inv;
      v.emplace_back(p, inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return v;
}

}  // namespace

FormIndexing::FormIndexing(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0 || degree > dim)
    fail(ErrorKind::usage, "form degree out of range");
  gen_combos(dim, degree, combos_);
}

const FormIndexing& FormIndexing::get(int dim, int degree) {
  static std::map<std::pair<int, int>, std::unique_ptr<FormIndexing>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim, degree}];
  if (!slot) slot.reset(new FormIndexing(dim, degree));
  return *slot;
}

int FormIndexing::rank(std::span<const int> sorted) const {
  for (int i = 0; i < count(); ++i) {
    if (std::equal(combos_[i].begin(), combos_[i].end(), sorted.begin(),
                   sorted.end()))
      return i;
  }
  return -1;
}

FormValue FormValue::zero(int dim, int degree) {
  FormValue v;
  v.dim = dim;
  v.degree = degree;
  v.comp.assign(FormIndexing::get(dim, degree).count(), cplx(0.0));
  return v;
}

double FormValue::max_abs() const {
  double m = 0.0;
  for (const auto& c : comp) m = std::max(m, std::abs(c));
  return m;
}

FormValue FormValue::operator+(const FormValue& o) const {
  FormValue r = *this;
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] += o.comp[i];
  return r;
}

FormValue FormValue::operator-(const FormValue& o) const {
  FormValue r = *this;
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] -= o.comp[i];
  return r;
}

FormValue FormValue::operator*(cplx s) const {
  FormValue r = *this;
  for (auto& c : r.comp) c *= s;
  return r;
}

cplx FormValue::evaluate(const std::vector<Eigen::VectorXcd>& vectors) const {
  const auto& ix = FormIndexing::get(dim, degree);
  const auto& ps = perms(degree);
  cplx acc = 0.0;
  for (int K = 0; K < ix.count(); ++K) {
    if (comp[K] == cplx(0.0)) continue;
    const auto& rows = ix.combo(K);
    cplx det = 0.0;
    for (const auto& [p, sign] : ps) {
      cplx term = double(sign);
      for (int t = 0; t < degree; ++t) term *= vectors[p[t]][rows[t]];
      det += term;
    }
    acc += comp[K] * det;
  }
  return acc;
}

FormValue FormJets::value() const {
  FormValue v;
  v.dim = dim;
  v.degree = degree;
  v.comp.resize(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) v.comp[i] = comp[i].value();
  return v;
}

FormJets FormJets::conj() const {
  FormJets r = *this;
  for (auto& j : r.comp) j = j.conj();
  std::swap(r.r, r.s);
  return r;
}

FormJets form_from_jets(int degree, std::vector<Jet> comp, int r, int s) {
  FormJets f;
  f.degree = degree;
  f.dim = comp.empty() ? 0 : comp[0].dim();
  f.r = r;
  f.s = s;
  if (static_cast<int>(comp.size()) != FormIndexing::get(f.dim, degree).count())
    fail(ErrorKind::usage, "form coefficient count does not match its degree");
  f.comp = std::move(comp);
  return f;
}

FormJets exterior_d(const FormJets& alpha) {
  if (alpha.comp[0].order() < 1)
    fail(ErrorKind::usage, "exterior derivative needs jets of order >= 1");
  const auto& ix_lo = FormIndexing::get(alpha.dim, alpha.degree);
  const auto& ix_hi = FormIndexing::get(alpha.dim, alpha.degree + 1);
  FormJets out;
  out.dim = alpha.dim;
  out.degree = alpha.degree + 1;
  out.comp.resize(ix_hi.count());
  const int ord = alpha.comp[0].order() - 1;
  for (int C = 0; C < ix_hi.count(); ++C) {
    const auto& combo = ix_hi.combo(C);
    Jet acc = Jet::constant(alpha.dim, ord, alpha.comp[0].base(), 0.0);
    for (int t = 0; t <= alpha.degree; ++t) {
      std::vector<int> rest;
      for (int u = 0; u <= alpha.degree; ++u)
        if (u != t) rest.push_back(combo[u]);
      const int src = ix_lo.rank(rest);
      const Jet term = alpha.comp[src].derivative(combo[t]);
      acc += (t % 2 == 0) ? term : -term;
    }
    out.comp[C] = std::move(acc);
  }
  return out;
}

FormJets interior(const FormJets& alpha, std::span<const Jet> field) {
  if (alpha.degree < 1) fail(ErrorKind::usage, "interior product needs degree >= 1");
  const auto& ix_lo = FormIndexing::get(alpha.dim, alpha.degree - 1);
  const auto& ix_hi = FormIndexing::get(alpha.dim, alpha.degree);
  const int ord = std::min(alpha.comp[0].order(), field[0].order());
  FormJets out;
  out.dim = alpha.dim;
  out.degree = alpha.degree - 1;
  out.comp.resize(ix_lo.count());
  for (int C = 0; C < ix_lo.count(); ++C) {
    const auto& combo = ix_lo.combo(C);
    Jet acc = Jet::constant(alpha.dim, ord, alpha.comp[0].base(), 0.0);
    for (int a = 0; a < alpha.dim; ++a) {
      if (std::find(combo.begin(), combo.end(), a) != combo.end()) continue;
      std::vector<int> full = combo;
      const int pos =
          static_cast<int>(std::lower_bound(full.begin(), full.end(), a) - full.begin());
      full.insert(full.begin() + pos, a);
      const Jet term =
          field[a].truncated(ord) * alpha.comp[ix_hi.rank(full)].truncated(ord);
      acc += (pos % 2 == 0) ? term : -term;
    }
    out.comp[C] = std::move(acc);
  }
  return out;
}

FormValue interior(const FormValue& alpha, const Eigen::VectorXcd& v) {
  const auto& ix_lo = FormIndexing::get(alpha.dim, alpha.degree - 1);
  const auto& ix_hi = FormIndexing::get(alpha.dim, alpha.degree);
  FormValue out = FormValue::zero(alpha.dim, alpha.degree - 1);
  for (int C = 0; C < ix_lo.count(); ++C) {
    const auto& combo = ix_lo.combo(C);
    for (int a = 0; a < alpha.dim; ++a) {
      if (std::find(combo.begin(), combo.end(), a) != combo.end()) continue;
      std::vector<int> full = combo;
      const int pos =
          static_cast<int>(std::lower_bound(full.begin(), full.end(), a) - full.begin());
      full.insert(full.begin() + pos, a);
      const cplx term = v[a] * alpha.comp[ix_hi.rank(full)];
      out.comp[C] += (pos % 2 == 0) ? term : -term;
    }
  }
  return out;
}

namespace {

// splits of a sorted combo into (first p slots, rest), with shuffle signs
int shuffle_sign(const std::vector<int>& positions) {
  int shift = 0;
  for (size_t i = 0; i < positions.size(); ++i)
    shift += positions[i] - static_cast<int>(i);
  return shift % 2 == 0 ? 1 : -1;
}

}  // namespace

FormJets wedge(const FormJets& a, const FormJets& b) {
  const int d = a.degree + b.degree;
  const auto& ix = FormIndexing::get(a.dim, d);
  const auto& ixa = FormIndexing::get(a.dim, a.degree);
  const auto& ixb = FormIndexing::get(a.dim, b.degree);
  const int ord = std::min(a.comp[0].order(), b.comp[0].order());
  FormJets out;
  out.dim = a.dim;
  out.degree = d;
  if (a.r >= 0 && b.r >= 0) {
    out.r = a.r + b.r;
    out.s = a.s + b.s;
  }
  out.comp.resize(ix.count());
  for (int C = 0; C < ix.count(); ++C) {
    const auto& combo = ix.combo(C);
    Jet acc = Jet::constant(a.dim, ord, a.comp[0].base(), 0.0);
    // choose which positions of combo go to a
    std::vector<int> sel(a.degree);
    for (int i = 0; i < a.degree; ++i) sel[i] = i;
    while (true) {
      std::vector<int> I, J;
      for (int i = 0, t = 0; i < d; ++i) {
        if (t < a.degree && sel[t] == i) {
          I.push_back(combo[i]);
          ++t;
        } else {
          J.push_back(combo[i]);
        }
      }
      const int sign = shuffle_sign(sel);
      const Jet term =
          a.comp[ixa.rank(I)].truncated(ord) * b.comp[ixb.rank(J)].truncated(ord);
      acc += sign > 0 ? term : -term;
      int t = a.degree - 1;
      while (t >= 0 && sel[t] == d - a.degree + t) --t;
      if (t < 0) break;
      ++sel[t];
      for (int u = t + 1; u < a.degree; ++u) sel[u] = sel[u - 1] + 1;
    }
    out.comp[C] = std::move(acc);
  }
  return out;
}

FormValue wedge(const FormValue& a, const FormValue& b) {
  const int d = a.degree + b.degree;
  const auto& ix = FormIndexing::get(a.dim, d);
  const auto& ixa = FormIndexing::get(a.dim, a.degree);
  const auto& ixb = FormIndexing::get(a.dim, b.degree);
  FormValue out = FormValue::zero(a.dim, d);
  for (int C = 0; C < ix.count(); ++C) {
    const auto& combo = ix.combo(C);
    std::vector<int> sel(a.degree);
    for (int i = 0; i < a.degree; ++i) sel[i] = i;
    while (true) {
      std::vector<int> I, J;
      for (int i = 0, t = 0; i < d; ++i) {
        if (t < static_cast<int>(sel.size()) && sel[t] == i) {
          I.push_back(combo[i]);
          ++t;
        } else {
          J.push_back(combo[i]);
        }
      }
      out.comp[C] += double(shuffle_sign(sel)) * a.comp[ixa.rank(I)] *
                     b.comp[ixb.rank(J)];
      int t = a.degree - 1;
      while (t >= 0 && sel[t] == d - a.degree + t) --t;
      if (t < 0) break;
      ++sel[t];
      for (int u = t + 1; u < a.degree; ++u) sel[u] = sel[u - 1] + 1;
    }
  }
  return out;
}

FormJets lie_derivative_cartan(const FormJets& alpha, std::span<const Jet> field) {
  // L_X = i_X d + d i_X ; for 0-forms the first term is X(alpha)
  if (alpha.degree == 0) {
    FormJets out = alpha;
    out.comp[0] = apply_vector_field(field, alpha.comp[0]);
    return out;
  }
  FormJets term1 = interior(exterior_d(alpha), field);
  FormJets term2 = exterior_d(interior(alpha, field));
  FormJets out;
  out.dim = alpha.dim;
  out.degree = alpha.degree;
  out.comp.resize(term1.comp.size());
  const int ord = std::min(term1.comp[0].order(), term2.comp[0].order());
  for (size_t i = 0; i < out.comp.size(); ++i)
    out.comp[i] = term1.comp[i].truncated(ord) + term2.comp[i].truncated(ord);
  return out;
}

FormValue to_frame_coframe(const FormValue& alpha,
                           const Eigen::MatrixXcd& frame_full) {
  const auto& ix = FormIndexing::get(alpha.dim, alpha.degree);
  FormValue out = FormValue::zero(alpha.dim, alpha.degree);
  for (int C = 0; C < ix.count(); ++C) {
    const auto& combo = ix.combo(C);
    std::vector<Eigen::VectorXcd> vs(alpha.degree);
    for (int t = 0; t < alpha.degree; ++t) vs[t] = frame_full.col(combo[t]);
    out.comp[C] = alpha.evaluate(vs);
  }
  return out;
}

FormValue from_frame_coframe(const FormValue& beta,
                             const Eigen::MatrixXcd& frame_full) {
  const auto& ix = FormIndexing::get(beta.dim, beta.degree);
  const Eigen::MatrixXcd theta = frame_full.inverse();
  const auto& ps = perms(beta.degree);
  FormValue out = FormValue::zero(beta.dim, beta.degree);
  for (int K = 0; K < ix.count(); ++K) {
    const auto& cols = ix.combo(K);
    cplx acc = 0.0;
    for (int C = 0; C < ix.count(); ++C) {
      if (beta.comp[C] == cplx(0.0)) continue;
      const auto& rows = ix.combo(C);
      cplx det = 0.0;
      for (const auto& [p, sign] : ps) {
        cplx term = double(sign);
        for (int t = 0; t < beta.degree; ++t) term *= theta(rows[t], cols[p[t]]);
        det += term;
      }
      acc += beta.comp[C] * det;
    }
    out.comp[K] = acc;
  }
  return out;
}

namespace {

void combo_type(const std::vector<int>& combo, int n, int& r, int& s) {
  r = 0;
  s = 0;
  for (int c : combo) (c < n ? ++r : ++s);
}

}  // namespace

FormValue project_type(const FormValue& alpha, const Eigen::MatrixXcd& frame_full,
                       int r, int s) {
  if (r + s != alpha.degree) fail(ErrorKind::usage, "type does not match degree");
  const int n = static_cast<int>(frame_full.cols()) / 2;
  FormValue beta = to_frame_coframe(alpha, frame_full);
  const auto& ix = FormIndexing::get(alpha.dim, alpha.degree);
  for (int C = 0; C < ix.count(); ++C) {
    int cr, cs;
    combo_type(ix.combo(C), n, cr, cs);
    if (cr != r || cs != s) beta.comp[C] = 0.0;
  }
  return from_frame_coframe(beta, frame_full);
}

double type_residual(const FormValue& alpha, const Eigen::MatrixXcd& frame_full,
                     int r, int s) {
  const int n = static_cast<int>(frame_full.cols()) / 2;
  const FormValue beta = to_frame_coframe(alpha, frame_full);
  const auto& ix = FormIndexing::get(alpha.dim, alpha.degree);
  double worst = 0.0;
  for (int C = 0; C < ix.count(); ++C) {
    int cr, cs;
    combo_type(ix.combo(C), n, cr, cs);
    if (cr != r || cs != s) worst = std::max(worst, std::abs(beta.comp[C]));
  }
  return worst;
}

FormValue dbar(const FormJets& alpha, const Eigen::MatrixXcd& frame_full) {
  if (alpha.r < 0 || alpha.s < 0)
    fail(ErrorKind::usage, "dbar needs a declared (r,s) type");
  const FormJets d = exterior_d(alpha);
  return project_type(d.value(), frame_full, alpha.r, alpha.s + 1);
}

namespace {

// alpha evaluated on frame fields, jet-wise: alpha(e_{I_1}, ..., e_{I_r})
Jet evaluate_on_fields(const FormJets& alpha,
                       const std::vector<std::span<const Jet>>& fields) {
  const auto& ix = FormIndexing::get(alpha.dim, alpha.degree);
  const auto& ps = perms(alpha.degree);
  int ord = alpha.comp[0].order();
  for (const auto& f : fields) ord = std::min(ord, f[0].order());
  Jet acc = Jet::constant(alpha.dim, ord, alpha.comp[0].base(), 0.0);
  for (int K = 0; K < ix.count(); ++K) {
    if (alpha.comp[K].max_abs_coeff() == 0.0) continue;
    const auto& rows = ix.combo(K);
    Jet det = Jet::constant(alpha.dim, ord, alpha.comp[0].base(), 0.0);
    for (const auto& [p, sign] : ps) {
      Jet term = Jet::constant(alpha.dim, ord, alpha.comp[0].base(), double(sign));
      for (int t = 0; t < alpha.degree; ++t)
        term = term * fields[p[t]][rows[t]].truncated(ord);
      det += term;
    }
    acc += alpha.comp[K].truncated(ord) * det;
  }
  return acc;
}

}  // namespace

HolomorphyReport is_holomorphic_at(const FormJets& alpha, const FrameJet& frame,
                                   double tol) {
  if (alpha.s != 0 || alpha.r < 1)
    fail(ErrorKind::usage, "holomorphy test applies to (r,0)-forms");
  const int n = frame.n;
  const int r = alpha.r;
  const Eigen::MatrixXcd U = frame.full_value_matrix();
  HolomorphyReport rep;
  const FormValue db = dbar(alpha, U);

  // iterate over pure (1,0) index sets I in the frame
  std::vector<int> I(r);
  for (int i = 0; i < r; ++i) I[i] = i;
  while (true) {
    // route 1: alpha_I as a jet, then e_k-bar derivatives at p
    std::vector<std::span<const Jet>> fields;
    for (int t = 0; t < r; ++t) fields.push_back(frame.e[I[t]]);
    const Jet aI = evaluate_on_fields(alpha, fields);
    for (int k = 0; k < n; ++k) {
      const cplx d1 = apply_vector_field(field_conj(frame.e[k]), aI).value();
      // route 2: (i_{e_k-bar} dbar alpha)(e_I) at p
      const FormValue contracted = interior(db, U.col(n + k));
      std::vector<Eigen::VectorXcd> vecs;
      for (int t = 0; t < r; ++t) vecs.push_back(U.col(I[t]));
      const cplx d2 = contracted.evaluate(vecs);
      rep.residual_coefficient = std::max(rep.residual_coefficient, std::abs(d1));
      rep.residual_contraction = std::max(rep.residual_contraction, std::abs(d2));
      rep.route_disagreement = std::max(rep.route_disagreement, std::abs(d1 - d2));
    }
    int t = r - 1;
    while (t >= 0 && I[t] == n - r + t) --t;
    if (t < 0) break;
    ++I[t];
    for (int u = t + 1; u < r; ++u) I[u] = I[u - 1] + 1;
  }
  rep.holomorphic = rep.residual_coefficient < tol;
  return rep;
}

FormJets fundamental_form(const JetMatrix& g_jets, const JetMatrix& j_jets) {
  const int d = static_cast<int>(std::sqrt(double(g_jets.size())) + 0.5);
  const auto& ix = FormIndexing::get(d, 2);
  // omega(d_a, d_b) = g(J d_a, d_b) = sum_c J^c_a g_cb
  JetMatrix M(d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Jet acc;
      bool first = true;
      for (int c = 0; c < d; ++c) {
        Jet t = j_jets[c * d + a] * g_jets[c * d + b];
        if (first) {
          acc = std::move(t);
          first = false;
        } else {
          acc += t;
        }
      }
      M[a * d + b] = std::move(acc);
    }
  }
  FormJets out;
  out.dim = d;
  out.degree = 2;
  out.r = 1;
  out.s = 1;
  out.comp.resize(ix.count());
  double asym = 0.0;
  for (int C = 0; C < ix.count(); ++C) {
    const int a = ix.combo(C)[0], b = ix.combo(C)[1];
    asym = std::max(asym, (M[a * d + b] + M[b * d + a]).max_abs_coeff());
    out.comp[C] = (M[a * d + b] - M[b * d + a]) * cplx(0.5);
  }
  if (asym > 1e-9)
    fail(ErrorKind::validation,
         "fundamental form is not antisymmetric; the metric is not J-invariant");
  return out;
}

Jet ComplexExpression::eval_jet(const BasePoint& base, int order) const {
  Jet out = re.valid() ? re.eval_jet(base, order)
                       : Jet::constant(static_cast<int>(base->size()), order, base, 0.0);
  if (im.valid()) out += im.eval_jet(base, order) * cplx(0.0, 1.0);
  return out;
}

ComplexExpression ComplexExpression::constant(cplx v) {
  return {Expression::literal(v.real()), Expression::literal(v.imag())};
}

FormJets OneFormExpr::eval(const BasePoint& base, int order) const {
  FormJets out;
  out.dim = dim;
  out.degree = 1;
  out.comp.resize(dim);
  for (int a = 0; a < dim; ++a) out.comp[a] = comp[a].eval_jet(base, order);
  return out;
}

OneFormExpr OneFormExpr::scaled(cplx c) const {
  OneFormExpr out;
  out.dim = dim;
  for (const auto& ce : comp) {
    Expression re = Expression::literal(c.real()) * ce.re -
                    Expression::literal(c.imag()) * ce.im;
    Expression im = Expression::literal(c.real()) * ce.im +
                    Expression::literal(c.imag()) * ce.re;
    out.comp.push_back({re, im});
  }
  return out;
}

OneFormExpr dz_form(const ChartManifold& m, int k) {
  OneFormExpr out;
  out.dim = m.dim();
  for (int a = 0; a < m.dim(); ++a)
    out.comp.push_back(ComplexExpression::constant(0.0));
  out.comp[2 * k].re = Expression::literal(1.0);
  out.comp[2 * k + 1].im = Expression::literal(1.0);
  return out;
}

FormJets random_10_form(const ChartManifold& m, const BasePoint& base, int order,
                        SampleRng& rng) {
  const int d = m.dim();
  const auto Jj = m.j_jets(base, order);
  std::vector<Jet> beta(d);
  for (int a = 0; a < d; ++a) {
    Jet j = Jet::constant(d, order, base, rng.cgaussian());
    for (int b = 0; b < d; ++b)
      j += Jet::coordinate(d, order, base, b) * (0.4 * rng.cgaussian());
    beta[a] = j;
  }
  // alpha_a = sum_b beta_b P^b_a with P = (Id - iJ)/2, so alpha kills
  // (0,1) vectors at every point
  std::vector<Jet> alpha(d);
  for (int a = 0; a < d; ++a) {
    Jet acc = beta[a] * cplx(0.5);
    for (int b = 0; b < d; ++b) acc -= beta[b] * Jj[b * d + a] * cplx(0, 0.5);
    alpha[a] = std::move(acc);
  }
  return form_from_jets(1, std::move(alpha), 1, 0);
}

std::vector<Jet> random_01_field(const ChartManifold& m, const BasePoint& base,
                                 int order, SampleRng& rng) {
  const int d = m.dim();
  const auto Jj = m.j_jets(base, order);
  std::vector<Jet> v(d);
  for (int a = 0; a < d; ++a) {
    Jet j = Jet::constant(d, order, base, rng.cgaussian());
    for (int b = 0; b < d; ++b)
      j += Jet::coordinate(d, order, base, b) * (0.3 * rng.cgaussian());
    v[a] = j;
  }
  const auto p10 = projection_10(Jj, v);
  std::vector<Jet> out(d);
  for (int a = 0; a < d; ++a) out[a] = v[a] - p10.comp[a];
  return out;
}

}  // namespace ah
