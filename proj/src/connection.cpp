#include "ahlab/connection.hpp"

#include <algorithm>
#include <climits>

namespace ah {

JetMatrix frame_metric(const MetricField& g, const FrameJet& frame) {
  const int n = frame.n, d = frame.dim();
  const JetMatrix gj = g.eval(frame.base, frame.order);
  JetMatrix out(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Jet acc;
      bool first = true;
      for (int a = 0; a < d; ++a) {
        Jet row;  // sum_b conj(e_j^b) g_ab
        bool rfirst = true;
        for (int b = 0; b < d; ++b) {
          Jet t = frame.e[j][b].conj() * gj[a * d + b];
          if (rfirst) {
            row = std::move(t);
            rfirst = false;
          } else {
            row += t;
          }
        }
        Jet t = frame.e[i][a] * row;
        if (first) {
          acc = std::move(t);
          first = false;
        } else {
          acc += t;
        }
      }
      out[i * n + j] = std::move(acc);
    }
  }
  return out;
}

ChristoffelAtPoint canonical_connection(const MetricField& g, const FrameJet& frame) {
  const int n = frame.n;
  if (frame.order < 2)
    fail(ErrorKind::usage, "canonical connection needs a frame of order >= 2");
  ChristoffelAtPoint chr;
  chr.n = n;
  chr.frame = frame;
  chr.frame_metric = frame_metric(g, frame);

  const StructureFunctions c = structure_functions(frame);
  chr.gamma_anti = c.c;

  const int ord = frame.order - 1;

  // right-hand sides: rhs[i][mu] for each j
  //   e_j(g_{i mu-bar}) - sum_nu conj(c_{mu j-bar}^nu) g_{i nu-bar}
  // solve sum_l Gamma_{ij}^l g_{l mu-bar} = rhs, i.e. A X = B with
  // A[mu][l] = g_{l mu-bar}, X[l][(i,j)] = Gamma_{ij}^l.
  JetMatrix A(n * n);
  for (int mu = 0; mu < n; ++mu)
    for (int l = 0; l < n; ++l)
      A[mu * n + l] = chr.frame_metric[l * n + mu].truncated(ord);

  JetMatrix B(n * n * n);  // rows mu, cols (i*n + j)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int mu = 0; mu < n; ++mu) {
        Jet rhs = apply_vector_field(frame.e[j], chr.frame_metric[i * n + mu]);
        for (int nu = 0; nu < n; ++nu)
          rhs -= c.at(mu, j, nu).conj().truncated(ord) *
                 chr.frame_metric[i * n + nu].truncated(ord);
        B[mu * (n * n) + i * n + j] = std::move(rhs);
      }
    }
  }
  const JetMatrix X = jet_solve(n, std::move(A), std::move(B), n * n,
                                ErrorKind::metric_degeneracy, "frame Gram matrix");
  chr.gamma_hol.resize(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        chr.gamma_hol[(i * n + j) * n + l] = X[l * (n * n) + i * n + j];
  return chr;
}

FieldInFrame to_frame(const FrameJet& frame, std::span<const Jet> coord_field,
                      int order) {
  const auto w = frame_components(frame, coord_field, order);
  FieldInFrame out;
  out.a.assign(w.begin(), w.begin() + frame.n);
  out.b.assign(w.begin() + frame.n, w.end());
  return out;
}

std::vector<Jet> to_coordinates(const FrameJet& frame, const FieldInFrame& X,
                                int order) {
  const int d = frame.dim(), n = frame.n;
  std::vector<Jet> out(d);
  for (int a = 0; a < d; ++a) {
    Jet acc = Jet::constant(d, order, frame.base, 0.0);
    for (int i = 0; i < n; ++i) {
      acc += X.a[i].truncated(order) * frame.e[i][a].truncated(order);
      acc += X.b[i].truncated(order) * frame.e[i][a].conj().truncated(order);
    }
    out[a] = std::move(acc);
  }
  return out;
}

FieldInFrame constant_frame_field(const FrameJet& frame,
                                  const Eigen::VectorXcd& e_coeffs,
                                  const Eigen::VectorXcd& ebar_coeffs) {
  FieldInFrame out;
  const int d = frame.dim();
  for (int i = 0; i < frame.n; ++i) {
    out.a.push_back(Jet::constant(d, frame.order, frame.base, e_coeffs[i]));
    out.b.push_back(Jet::constant(d, frame.order, frame.base, ebar_coeffs[i]));
  }
  return out;
}

namespace {

int min_order(const FieldInFrame& X) {
  int o = INT_MAX;
  for (const auto& j : X.a) o = std::min(o, j.order());
  for (const auto& j : X.b) o = std::min(o, j.order());
  return o;
}

}  // namespace

FieldInFrame covariant_derivative(const ChristoffelAtPoint& chr,
                                  const FieldInFrame& X, const FieldInFrame& Y) {
  const int n = chr.n;
  const FrameJet& frame = chr.frame;
  if (static_cast<int>(X.a.size()) != n || static_cast<int>(Y.a.size()) != n)
    fail(ErrorKind::usage, "field is not expressed over this frame's chart");
  const int gamma_ord = chr.gamma_hol[0].order();
  const int r = std::min({min_order(X), min_order(Y) - 1, gamma_ord});
  if (r < 0) fail(ErrorKind::usage, "covariant derivative needs order >= 1 fields");

  const auto Xc = to_coordinates(frame, X, r);

  FieldInFrame out;
  out.a.resize(n);
  out.b.resize(n);
  for (int k = 0; k < n; ++k) {
    Jet acc_a = apply_vector_field(Xc, Y.a[k].truncated(r + 1));
    Jet acc_b = apply_vector_field(Xc, Y.b[k].truncated(r + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Jet gamma = chr.hol(i, j, k).truncated(r);
        const Jet cc = chr.anti(i, j, k).truncated(r);
        acc_a += X.a[j].truncated(r) * Y.a[i].truncated(r) * gamma;
        acc_a += X.b[j].truncated(r) * Y.a[i].truncated(r) * cc;
        acc_b += X.a[j].truncated(r) * Y.b[i].truncated(r) * cc.conj();
        acc_b += X.b[j].truncated(r) * Y.b[i].truncated(r) * gamma.conj();
      }
    }
    out.a[k] = std::move(acc_a);
    out.b[k] = std::move(acc_b);
  }
  return out;
}

TorsionValue torsion(const ChristoffelAtPoint& chr, const FieldInFrame& X,
                     const FieldInFrame& Y) {
  const FrameJet& frame = chr.frame;
  const int r = std::min(min_order(X), min_order(Y));
  if (r < 1) fail(ErrorKind::usage, "torsion needs fields of order >= 1");

  const FieldInFrame dxy = covariant_derivative(chr, X, Y);
  const FieldInFrame dyx = covariant_derivative(chr, Y, X);
  const auto Xc = to_coordinates(frame, X, r);
  const auto Yc = to_coordinates(frame, Y, r);
  const auto br = field_bracket(Xc, Yc);

  const int d = frame.dim();
  const auto u = to_coordinates(frame, dxy, r - 1);
  const auto v = to_coordinates(frame, dyx, r - 1);
  Eigen::VectorXcd t(d);
  for (int a = 0; a < d; ++a) t[a] = u[a].value() - v[a].value() - br[a].value();

  const Eigen::MatrixXcd P = projection_10_matrix(frame.jp);
  TorsionValue out;
  out.part10 = P * t;
  out.part01 = t - out.part10;
  return out;
}

AxiomResiduals verify_axioms(const ChartManifold& m, const MetricPtr& g,
                             std::span<const double> p, uint64_t seed,
                             int triples) {
  const int d = m.dim(), n = m.n;
  auto base = make_base(std::vector<double>(p.begin(), p.end()));
  const FrameJet frame = coordinate_10_frame(m, base);
  const ChristoffelAtPoint chr = canonical_connection(*g, frame);
  const JetMatrix gj = g->eval(base, 3);
  const Eigen::MatrixXcd P = projection_10_matrix(frame.jp);

  Eigen::MatrixXcd gp(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gp(a, b) = gj[a * d + b].value();

  auto pair_g = [&](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    return (u.transpose() * gp * v).value();
  };
  auto coord_values = [&](const FieldInFrame& X) {
    const auto xc = to_coordinates(frame, X, 1);
    Eigen::VectorXcd v(d);
    for (int a = 0; a < d; ++a) v[a] = xc[a].value();
    return v;
  };

  SampleRng rng(seed, 0x41580);
  AxiomResiduals res;
  for (int t = 0; t < triples; ++t) {
    // real constant coordinate fields
    std::vector<Jet> Xc(d), Yc(d), Zc(d);
    Eigen::VectorXcd xv(d), yv(d), zv(d);
    for (int a = 0; a < d; ++a) {
      const double x = rng.gaussian(), y = rng.gaussian(), z = rng.gaussian();
      Xc[a] = Jet::constant(d, 3, base, x);
      Yc[a] = Jet::constant(d, 3, base, y);
      Zc[a] = Jet::constant(d, 3, base, z);
      xv[a] = x;
      yv[a] = y;
      zv[a] = z;
    }
    const FieldInFrame X = to_frame(frame, Xc, 3);
    const FieldInFrame Y = to_frame(frame, Yc, 3);
    const FieldInFrame Z = to_frame(frame, Zc, 3);

    // metric compatibility
    Jet gyz;
    bool first = true;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Jet tt = gj[a * d + b] * yv[a] * zv[b];
        if (first) {
          gyz = std::move(tt);
          first = false;
        } else {
          gyz += tt;
        }
      }
    const cplx lhs = apply_vector_field(Xc, gyz).value();
    const cplx rhs = pair_g(coord_values(covariant_derivative(chr, X, Y)), zv) +
                     pair_g(yv, coord_values(covariant_derivative(chr, X, Z)));
    res.metric_compat = std::max(res.metric_compat, std::abs(lhs - rhs));

    // J compatibility: nabla_X of a (1,0) field stays (1,0)
    Eigen::VectorXcd wa(n), wb(n);
    for (int i = 0; i < n; ++i) {
      wa[i] = rng.cgaussian();
      wb[i] = 0.0;
    }
    const FieldInFrame W = constant_frame_field(frame, wa, wb);
    const Eigen::VectorXcd U = coord_values(covariant_derivative(chr, X, W));
    res.j_compat = std::max(res.j_compat, (P * U - U).cwiseAbs().maxCoeff());

    // (1,1) torsion
    Eigen::VectorXcd va(n), vb(n);
    for (int i = 0; i < n; ++i) {
      va[i] = rng.cgaussian();
      vb[i] = 0.0;
    }
    const FieldInFrame V10 = constant_frame_field(frame, va, vb);
    Eigen::VectorXcd ua = Eigen::VectorXcd::Zero(n), ub(n);
    for (int i = 0; i < n; ++i) ub[i] = rng.cgaussian();
    const FieldInFrame U01 = constant_frame_field(frame, ua, ub);
    const TorsionValue tau = torsion(chr, V10, U01);
    res.torsion11 = std::max(res.torsion11, tau.total().cwiseAbs().maxCoeff());
  }
  return res;
}

OracleResult connection_by_axioms_oracle(const ChartManifold& m,
                                         const MetricPtr& g,
                                         std::span<const double> p) {
  const int d = m.dim();
  auto base = make_base(std::vector<double>(p.begin(), p.end()));
  const JetMatrix gj = g->eval(base, 1);
  const JetMatrix Jj = m.j_jets(base, 1);
  const Eigen::MatrixXcd P = projection_10_matrix(m.j_value(p));

  const int unknowns = d * d * d;
  auto idx = [&](int a, int b, int c) { return (a * d + b) * d + c; };

  const int metric_rows = d * d * (d + 1) / 2;
  const int j_rows = d * d * d;
  const int torsion_rows = 2 * d * d * d;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(metric_rows + j_rows + torsion_rows,
                                            unknowns);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(A.rows());
  int row = 0;

  // nabla g = 0
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = b; c < d; ++c) {
        for (int e = 0; e < d; ++e) {
          A(row, idx(a, b, e)) += gj[e * d + c].value().real();
          A(row, idx(a, c, e)) += gj[b * d + e].value().real();
        }
        rhs[row] = gj[b * d + c].derivative(a).value().real();
        ++row;
      }
    }
  }
  // nabla J = 0
  for (int a = 0; a < d; ++a) {
    for (int e = 0; e < d; ++e) {
      for (int c = 0; c < d; ++c) {
        for (int f = 0; f < d; ++f) {
          A(row, idx(a, f, e)) += Jj[f * d + c].value().real();
          A(row, idx(a, c, f)) -= Jj[e * d + f].value().real();
        }
        rhs[row] = -Jj[e * d + c].derivative(a).value().real();
        ++row;
      }
    }
  }
  // tau(X, Y-bar) = 0 for X, Y of type (1,0)
  for (int dd = 0; dd < d; ++dd) {
    for (int ee = 0; ee < d; ++ee) {
      for (int c = 0; c < d; ++c) {
        // complex equation -> two real rows
        for (int a = 0; a < d; ++a) {
          for (int b = 0; b < d; ++b) {
            const cplx w = P(a, dd) * std::conj(P(b, ee));
            A(row, idx(a, b, c)) += w.real();
            A(row, idx(b, a, c)) -= w.real();
            A(row + 1, idx(a, b, c)) += w.imag();
            A(row + 1, idx(b, a, c)) -= w.imag();
          }
        }
        row += 2;
      }
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  OracleResult out;
  out.unknowns = unknowns;
  out.rank = static_cast<int>(qr.rank());
  if (out.rank < unknowns)
    fail(ErrorKind::uniqueness_violation,
         "axioms system is rank deficient: rank " + std::to_string(out.rank) +
             " of " + std::to_string(unknowns));
  const Eigen::VectorXd x = qr.solve(rhs);

  // compare against the closed-form construction, converted to the
  // coordinate frame
  const FrameJet frame = coordinate_10_frame(m, base);
  const ChristoffelAtPoint chr = canonical_connection(*g, frame);
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    std::vector<Jet> da(d), db(d);
    for (int q = 0; q < d; ++q)
      da[q] = Jet::constant(d, 3, base, q == a ? 1.0 : 0.0);
    const FieldInFrame X = to_frame(frame, da, 3);
    for (int b = 0; b < d; ++b) {
      for (int q = 0; q < d; ++q)
        db[q] = Jet::constant(d, 3, base, q == b ? 1.0 : 0.0);
      const FieldInFrame Y = to_frame(frame, db, 3);
      const auto cov = to_coordinates(frame, covariant_derivative(chr, X, Y), 1);
      for (int c = 0; c < d; ++c) {
        const cplx v = cov[c].value();
        worst = std::max(worst, std::abs(v.imag()));
        worst = std::max(worst, std::abs(v.real() - x[idx(a, b, c)]));
      }
    }
  }
  out.match_residual = worst;
  if (worst > 1e-8)
    fail(ErrorKind::uniqueness_violation,
         "axioms solve deviates from the closed-form connection by " +
             std::to_string(worst));
  return out;
}

FrameJet make_normal_frame(const MetricField& g, const FrameJet& base,
                           FrameKind kind) {
  const int n = base.n;
  FrameJet prepared = make_pseudo_holomorphic_frame(base);
  if (kind == FrameKind::quasi)
    prepared = make_quasi_holomorphic_frame(prepared);

  const ChristoffelAtPoint chr = canonical_connection(g, prepared);
  HolDerivTargets targets(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        targets[(i * n + j) * n + k] = -chr.hol(i, k, j).value();

  FrameJet out = (kind == FrameKind::pseudo)
                     ? make_pseudo_holomorphic_frame(prepared, targets)
                     : make_quasi_holomorphic_frame(prepared, targets);
  if (normal_residual(g, out) > 1e-8)
    fail(ErrorKind::internal_consistency,
         "normal frame construction left a nonzero metric differential");
  return out;
}

}  // namespace ah
