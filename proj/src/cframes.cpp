#include "ahlab/cframes.hpp"

#include <algorithm>

namespace ah {

namespace {

Eigen::VectorXcd field_values(std::span<const Jet> field) {
  Eigen::VectorXcd v(field.size());
  for (size_t a = 0; a < field.size(); ++a) v[a] = field[a].value();
  return v;
}

constexpr double kConditionLimit = 1e6;

}  // namespace

Eigen::MatrixXcd FrameJet::value_matrix() const {
  Eigen::MatrixXcd m(dim(), n);
  for (int i = 0; i < n; ++i) m.col(i) = field_values(e[i]);
  return m;
}

Eigen::MatrixXcd FrameJet::full_value_matrix() const {
  Eigen::MatrixXcd m(dim(), dim());
  for (int i = 0; i < n; ++i) {
    m.col(i) = field_values(e[i]);
    m.col(n + i) = m.col(i).conjugate();
  }
  return m;
}

double FrameJet::condition_number() const {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(value_matrix());
  const auto& s = svd.singularValues();
  return s[s.size() - 1] > 0 ? s[0] / s[s.size() - 1]
                             : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXcd projection_10_matrix(const Eigen::MatrixXd& j_at_p) {
  const int d = static_cast<int>(j_at_p.rows());
  return 0.5 * (Eigen::MatrixXcd::Identity(d, d) -
                cplx(0, 1) * j_at_p.cast<cplx>());
}

Eigen::VectorXcd projection_10(const Eigen::MatrixXd& j_at_p,
                               const Eigen::VectorXcd& v) {
  return projection_10_matrix(j_at_p) * v;
}

VectorFieldJet projection_10(const JetMatrix& j_jets, std::span<const Jet> v) {
  const int d = static_cast<int>(v.size());
  const int order = std::min(v[0].order(), j_jets[0].order());
  VectorFieldJet out;
  out.tag = VectorType::type10;
  out.comp.resize(d);
  for (int a = 0; a < d; ++a) {
    Jet acc = v[a].truncated(order) * cplx(0.5);
    for (int b = 0; b < d; ++b)
      acc -= j_jets[a * d + b].truncated(order) * v[b].truncated(order) * cplx(0, 0.5);
    out.comp[a] = std::move(acc);
  }
  return out;
}

double type10_residual(const Eigen::MatrixXd& j_at_p, const Eigen::VectorXcd& v) {
  return (projection_10(j_at_p, v) - v).cwiseAbs().maxCoeff();
}

VectorFieldJet lie_bracket(const VectorFieldJet& X, const VectorFieldJet& Y) {
  VectorFieldJet out;
  out.comp = field_bracket(X.comp, Y.comp);
  out.tag = VectorType::mixed;
  return out;
}

FrameJet coordinate_10_frame(const ChartManifold& m, const BasePoint& base,
                             int order) {
  return coordinate_10_frame(m.j_jets(base, order), base);
}

FrameJet coordinate_10_frame(const JetMatrix& j_jets, const BasePoint& base) {
  const int d = static_cast<int>(base->size());
  const int n = d / 2;
  // candidate columns: P applied to each coordinate field
  std::vector<std::vector<Jet>> cand(d);
  Eigen::MatrixXcd values(d, d);
  for (int a = 0; a < d; ++a) {
    std::vector<Jet> unit(d);
    for (int b = 0; b < d; ++b)
      unit[b] = Jet::constant(d, j_jets[0].order(), base, b == a ? 1.0 : 0.0);
    cand[a] = projection_10(j_jets, unit).comp;
    values.col(a) = field_values(cand[a]);
  }
  std::vector<int> chosen;
  std::vector<bool> used(d, false);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_sigma = -1.0;
    for (int a = 0; a < d; ++a) {
      if (used[a]) continue;
      Eigen::MatrixXcd m(d, step + 1);
      for (int t = 0; t < step; ++t) m.col(t) = values.col(chosen[t]);
      m.col(step) = values.col(a);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
      const double sigma = svd.singularValues()[step];
      if (sigma > best_sigma + 1e-15) {
        best_sigma = sigma;
        best = a;
      }
    }
    chosen.push_back(best);
    used[best] = true;
  }
  FrameJet f;
  f.n = n;
  f.order = j_jets[0].order();
  f.base = base;
  for (int i = 0; i < n; ++i) f.e.push_back(cand[chosen[i]]);
  f.jp.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) f.jp(a, b) = j_jets[a * d + b].value().real();
  if (f.condition_number() > kConditionLimit)
    fail(ErrorKind::degenerate_frame,
         "projected coordinate frame condition number exceeds 1e6");
  return f;
}

std::vector<Jet> frame_components(const FrameJet& frame,
                                  std::span<const Jet> field, int order) {
  const int d = frame.dim(), n = frame.n;
  JetMatrix M(d * d);
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < n; ++i) {
      M[a * d + i] = frame.e[i][a].truncated(order);
      M[a * d + n + i] = frame.e[i][a].conj().truncated(order);
    }
  }
  JetMatrix B(d);
  for (int a = 0; a < d; ++a) B[a] = field[a].truncated(order);
  return jet_solve(d, std::move(M), std::move(B), 1, ErrorKind::degenerate_frame,
                   "frame decomposition");
}

StructureFunctions structure_functions(const FrameJet& frame) {
  const int n = frame.n, d = frame.dim();
  if (frame.order < 2)
    fail(ErrorKind::usage, "structure functions need a frame of order >= 2");
  const int ord = frame.order - 1;
  JetMatrix M(d * d);
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < n; ++i) {
      M[a * d + i] = frame.e[i][a].truncated(ord);
      M[a * d + n + i] = frame.e[i][a].conj().truncated(ord);
    }
  }
  JetMatrix B(d * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto br = field_bracket(field_conj(frame.e[j]), frame.e[i]);
      for (int a = 0; a < d; ++a) B[a * (n * n) + i * n + j] = br[a];
    }
  }
  const JetMatrix X = jet_solve(d, std::move(M), std::move(B), n * n,
                                ErrorKind::degenerate_frame, "frame matrix");
  StructureFunctions sf;
  sf.n = n;
  sf.c.resize(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) sf.at(i, j, k) = X[k * (n * n) + i * n + j];
  return sf;
}

namespace {

// frame transition e_i = f_ij v_j with polynomial jets f
FrameJet apply_transition(const FrameJet& base,
                          const std::vector<std::vector<Jet>>& f) {
  FrameJet out;
  out.n = base.n;
  out.order = base.order;
  out.base = base.base;
  out.jp = base.jp;
  out.trans = f;
  out.e.resize(base.n);
  for (int i = 0; i < base.n; ++i) {
    out.e[i].resize(base.dim());
    for (int a = 0; a < base.dim(); ++a) {
      Jet acc;
      bool first = true;
      for (int j = 0; j < base.n; ++j) {
        Jet t = f[i][j] * base.e[j][a];
        if (first) {
          acc = std::move(t);
          first = false;
        } else {
          acc += t;
        }
      }
      out.e[i][a] = std::move(acc);
    }
  }
  return out;
}

// rows (v_k(f), v_k-bar(f)) of the first-derivative conversion system
Eigen::MatrixXcd first_order_system(const FrameJet& base) {
  const int n = base.n, d = base.dim();
  Eigen::MatrixXcd M(d, d);
  const Eigen::MatrixXcd V = base.value_matrix();
  for (int k = 0; k < n; ++k) {
    M.row(k) = V.col(k).transpose();
    M.row(n + k) = V.col(k).conjugate().transpose();
  }
  return M;
}

}  // namespace

FrameJet make_pseudo_holomorphic_frame(const FrameJet& base,
                                       const HolDerivTargets& hol_targets) {
  const int n = base.n, d = base.dim();
  if (base.order < 2)
    fail(ErrorKind::usage, "pseudo holomorphic construction needs order >= 2");
  const StructureFunctions c = structure_functions(base);
  const Eigen::MatrixXcd M = first_order_system(base);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  if (std::abs(lu.determinant()) < 1e-12)
    fail(ErrorKind::degenerate_frame, "direction-conversion system is singular");

  std::vector<std::vector<Jet>> f(n, std::vector<Jet>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXcd rhs(d);
      for (int k = 0; k < n; ++k) {
        rhs[k] = hol_targets.empty() ? cplx(0.0)
                                     : hol_targets[(i * n + j) * n + k];
        rhs[n + k] = -c.at(i, k, j).value();
      }
      const Eigen::VectorXcd lambda = lu.solve(rhs);
      Jet fij = Jet::constant(d, base.order, base.base, i == j ? 1.0 : 0.0);
      for (int a = 0; a < d; ++a) {
        std::vector<int> mi(d, 0);
        mi[a] = 1;
        fij.coeffs()[JetTables::get(d, base.order).find(mi)] = lambda[a];
      }
      f[i][j] = std::move(fij);
    }
  }
  FrameJet out = apply_transition(base, f);
  if (pseudo_residual(out, out.jp) > 1e-9)
    fail(ErrorKind::internal_consistency,
         "pseudo holomorphic construction failed its bracket check");
  return out;
}

FrameJet make_quasi_holomorphic_frame(const FrameJet& base,
                                      const HolDerivTargets& hol_targets) {
  const int n = base.n, d = base.dim();
  if (base.order < 3)
    fail(ErrorKind::usage, "quasi holomorphic construction needs order >= 3");
  const StructureFunctions c = structure_functions(base);

  // the base frame must be pseudo holomorphic at p: c(p) = 0
  double cmax = 0.0;
  for (const auto& j : c.c) cmax = std::max(cmax, std::abs(j.value()));
  if (cmax > 1e-8)
    fail(ErrorKind::usage,
         "quasi construction requires a pseudo holomorphic base frame");

  const JetTables& tables = JetTables::get(d, base.order);

  // first-order part of f_ij (zero unless normal-frame targets are given)
  const Eigen::MatrixXcd M1 = first_order_system(base);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu1(M1);
  if (std::abs(lu1.determinant()) < 1e-12)
    fail(ErrorKind::degenerate_frame, "direction-conversion system is singular");

  // unknown Taylor coefficients t_ab (a <= b) of the quadratic part
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) slots.emplace_back(a, b);
  const int m2 = static_cast<int>(slots.size());  // = n(2n+1)

  // conditions: v_l v_k-bar (all l,k), v_l v_k (l<=k), v_l-bar v_k-bar (l<=k)
  struct Cond {
    int l, k;
    bool conj_inner, conj_outer;
  };
  std::vector<Cond> conds;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) conds.push_back({l, k, true, false});
  for (int l = 0; l < n; ++l)
    for (int k = l; k < n; ++k) conds.push_back({l, k, false, false});
  for (int l = 0; l < n; ++l)
    for (int k = l; k < n; ++k) conds.push_back({l, k, true, true});
  if (static_cast<int>(conds.size()) != m2)
    fail(ErrorKind::internal_consistency, "second-order condition count mismatch");

  auto second_derivative = [&](const Cond& cond, const Jet& fj) -> cplx {
    const auto& inner_field = cond.conj_inner ? field_conj(base.e[cond.k])
                                              : base.e[cond.k];
    const Jet once = apply_vector_field(inner_field, fj);
    const auto& outer_field = cond.conj_outer ? field_conj(base.e[cond.l])
                                              : base.e[cond.l];
    return apply_vector_field(outer_field, once).value();
  };

  // linear response of each condition to each unknown Taylor coefficient
  Eigen::MatrixXcd A(m2, m2);
  for (int u = 0; u < m2; ++u) {
    Jet probe = Jet::constant(d, base.order, base.base, 0.0);
    std::vector<int> mi(d, 0);
    ++mi[slots[u].first];
    ++mi[slots[u].second];
    probe.coeffs()[tables.find(mi)] = 1.0;
    for (int r = 0; r < m2; ++r) A(r, u) = second_derivative(conds[r], probe);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  if (qr.rank() < m2)
    fail(ErrorKind::internal_consistency,
         "second-order frame system is rank deficient");

  std::vector<std::vector<Jet>> f(n, std::vector<Jet>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // first-order part
      Eigen::VectorXcd rhs1 = Eigen::VectorXcd::Zero(d);
      for (int k = 0; k < n; ++k)
        rhs1[k] = hol_targets.empty() ? cplx(0.0)
                                      : hol_targets[(i * n + j) * n + k];
      const Eigen::VectorXcd lambda = lu1.solve(rhs1);
      Jet f0 = Jet::constant(d, base.order, base.base, i == j ? 1.0 : 0.0);
      for (int a = 0; a < d; ++a) {
        std::vector<int> mi(d, 0);
        mi[a] = 1;
        f0.coeffs()[tables.find(mi)] = lambda[a];
      }
      // affine offset of the conditions at zero quadratic part, and targets
      Eigen::VectorXcd rhs2(m2);
      for (int r = 0; r < m2; ++r) {
        const Cond& cond = conds[r];
        cplx target = 0.0;
        if (cond.conj_inner && !cond.conj_outer) {
          // v_l v_k-bar (f_ij)(p) = -v_l(c_{i k-bar}^j)(p)
          target = -apply_vector_field(base.e[cond.l], c.at(i, cond.k, j)).value();
        }
        rhs2[r] = target - second_derivative(cond, f0);
      }
      const Eigen::VectorXcd t = qr.solve(rhs2);
      for (int u = 0; u < m2; ++u) {
        std::vector<int> mi(d, 0);
        ++mi[slots[u].first];
        ++mi[slots[u].second];
        f0.coeffs()[tables.find(mi)] += t[u];
      }
      f[i][j] = std::move(f0);
    }
  }
  FrameJet out = apply_transition(base, f);
  if (pseudo_residual(out, out.jp) > 1e-9 || quasi_residual(out, out.jp) > 1e-8)
    fail(ErrorKind::internal_consistency,
         "quasi holomorphic construction failed its bracket checks");
  return out;
}

double pseudo_residual(const FrameJet& frame, const Eigen::MatrixXd& j_at_p) {
  const Eigen::MatrixXcd P = projection_10_matrix(j_at_p);
  double worst = 0.0;
  for (int i = 0; i < frame.n; ++i) {
    for (int j = 0; j < frame.n; ++j) {
      const auto br = field_bracket(field_conj(frame.e[j]), frame.e[i]);
      Eigen::VectorXcd v(frame.dim());
      for (int a = 0; a < frame.dim(); ++a) v[a] = br[a].value();
      worst = std::max(worst, (P * v).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double quasi_residual(const FrameJet& frame, const Eigen::MatrixXd& j_at_p) {
  const Eigen::MatrixXcd P = projection_10_matrix(j_at_p);
  double worst = 0.0;
  for (int i = 0; i < frame.n; ++i) {
    for (int j = 0; j < frame.n; ++j) {
      const auto inner = field_bracket(field_conj(frame.e[j]), frame.e[i]);
      for (int k = 0; k < frame.n; ++k) {
        const auto outer = field_bracket(frame.e[k], inner);
        Eigen::VectorXcd v(frame.dim());
        for (int a = 0; a < frame.dim(); ++a) v[a] = outer[a].value();
        worst = std::max(worst, (P * v).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double normal_residual(const MetricField& g, const FrameJet& frame) {
  const JetMatrix gj = g.eval(frame.base, frame.order);
  double worst = 0.0;
  for (int i = 0; i < frame.n; ++i) {
    for (int j = 0; j < frame.n; ++j) {
      // g_{ij-bar} = sum_ab e_i^a conj(e_j^b) g_ab
      Jet entry;
      bool first = true;
      for (int a = 0; a < frame.dim(); ++a) {
        for (int b = 0; b < frame.dim(); ++b) {
          Jet t = frame.e[i][a] * frame.e[j][b].conj() * gj[a * frame.dim() + b];
          if (first) {
            entry = std::move(t);
            first = false;
          } else {
            entry += t;
          }
        }
      }
      for (int a = 0; a < frame.dim(); ++a)
        worst = std::max(worst, std::abs(entry.derivative(a).value()));
    }
  }
  return worst;
}

}  // namespace ah
