#include "ahlab/curvature.hpp"

#include <algorithm>

namespace ah {

double CurvatureComponents::hermitian_symmetry_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst,
                           std::abs(at(i, j, k, l) - std::conj(at(j, i, l, k))));
  return worst;
}

CurvatureComponents curvature_from_definition(const MetricField& g,
                                              const FrameJet& frame) {
  const int n = frame.n, d = frame.dim();
  if (frame.order < 3)
    fail(ErrorKind::usage, "curvature from the definition needs jets of order >= 3");

  const ChristoffelAtPoint chr = canonical_connection(g, frame);
  const StructureFunctions c{n, chr.gamma_anti};

  // [e_k, e_l-bar] decomposed in the (e, e-bar) basis at p
  const Eigen::MatrixXcd full = frame.full_value_matrix();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(full);
  std::vector<Eigen::VectorXcd> bracket_comp(n * n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const auto br = field_bracket(frame.e[k], field_conj(frame.e[l]));
      Eigen::VectorXcd bv(d);
      for (int a = 0; a < d; ++a) bv[a] = br[a].value();
      bracket_comp[k * n + l] = lu.solve(bv);
    }
  }

  // metric values at p
  Eigen::MatrixXcd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = chr.frame_metric[i * n + j].value();

  CurvatureComponents out;
  out.n = n;
  out.point = frame.base;
  out.frame_at_p = frame.value_matrix();
  out.R.assign(size_t(n) * n * n * n, cplx(0.0));

  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const Eigen::VectorXcd& AB = bracket_comp[k * n + l];
        for (int m = 0; m < n; ++m) {
          // nabla_{e_k} nabla_{e_l-bar} e_i
          cplx term = apply_vector_field(frame.e[k], c.at(i, l, m)).value();
          for (int lam = 0; lam < n; ++lam)
            term += c.at(i, l, lam).value() * chr.hol(lam, k, m).value();
          // - nabla_{e_l-bar} nabla_{e_k} e_i
          term -= apply_vector_field(field_conj(frame.e[l]),
                                     chr.hol(i, k, m)).value();
          for (int lam = 0; lam < n; ++lam)
            term -= chr.hol(i, k, lam).value() * c.at(lam, l, m).value();
          // - nabla_{[e_k, e_l-bar]} e_i
          for (int nu = 0; nu < n; ++nu) {
            term -= AB[nu] * chr.hol(i, nu, m).value();
            term -= AB[n + nu] * c.at(i, nu, m).value();
          }
          // pair with e_j-bar
          for (int j = 0; j < n; ++j) out.at(i, j, k, l) += term * G(m, j);
        }
      }
    }
  }
  return out;
}

QuasiCurvatureResult curvature_quasi_formula(const ChartManifold& m,
                                             const MetricField& g,
                                             const BasePoint& p, QuasiMode mode) {
  const int n = m.n;
  QuasiCurvatureResult res;
  const FrameJet coord = coordinate_10_frame(m, p);
  res.frame = (mode == QuasiMode::normal)
                  ? make_normal_frame(g, coord, FrameKind::quasi)
                  : make_quasi_holomorphic_frame(
                        make_pseudo_holomorphic_frame(coord));
  const FrameJet& frame = res.frame;

  const JetMatrix G = frame_metric(g, frame);

  // first derivatives e_k(g_{i mu-bar}) and e_l-bar(g_{lambda j-bar}) at p,
  // and the mixed second derivatives
  std::vector<cplx> D1(n * n * n), D2(n * n * n);
  std::vector<cplx> T2(size_t(n) * n * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Jet& gij = G[i * n + j];
      for (int k = 0; k < n; ++k) {
        const Jet ek = apply_vector_field(frame.e[k], gij);
        D1[(i * n + j) * n + k] = ek.value();
        for (int l = 0; l < n; ++l)
          T2[((size_t(i) * n + j) * n + k) * n + l] =
              apply_vector_field(field_conj(frame.e[l]), ek).value();
      }
      for (int l = 0; l < n; ++l)
        D2[(i * n + j) * n + l] =
            apply_vector_field(field_conj(frame.e[l]), gij).value();
    }
  }

  Eigen::MatrixXcd Gp(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Gp(i, j) = G[i * n + j].value();
  const Eigen::MatrixXcd Ginv = Gp.inverse();

  CurvatureComponents two;
  two.n = n;
  two.point = p;
  two.frame_at_p = frame.value_matrix();
  two.R.assign(size_t(n) * n * n * n, cplx(0.0));
  CurvatureComponents one = two;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const cplx second = -T2[((size_t(i) * n + j) * n + k) * n + l];
          cplx corr = 0.0;
          for (int mu = 0; mu < n; ++mu)
            for (int lam = 0; lam < n; ++lam)
              corr += Ginv(mu, lam) * D1[(i * n + mu) * n + k] *
                      D2[(lam * n + j) * n + l];
          one.at(i, j, k, l) = second;
          two.at(i, j, k, l) = second + corr;
        }
      }
    }
  }

  if (mode == QuasiMode::normal) {
    double worst = 0.0;
    for (size_t t = 0; t < one.R.size(); ++t)
      worst = std::max(worst, std::abs(one.R[t] - two.R[t]));
    res.normal_consistency_residual = worst;
    res.R = std::move(one);
  } else {
    res.R = std::move(two);
  }

  // Lemma check: nabla_{e_k} nabla_{e_j-bar} e_i (p) = 0 in this frame
  {
    const ChristoffelAtPoint chr = canonical_connection(g, frame);
    const StructureFunctions c{n, chr.gamma_anti};
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int mm = 0; mm < n; ++mm) {
            cplx v = apply_vector_field(frame.e[k], c.at(i, j, mm)).value();
            for (int lam = 0; lam < n; ++lam)
              v += c.at(i, j, lam).value() * chr.hol(lam, k, mm).value();
            worst = std::max(worst, std::abs(v));
          }
    res.second_derivative_residual = worst;
  }
  return res;
}

double bisectional(const CurvatureComponents& R, const Eigen::VectorXcd& X,
                   const Eigen::VectorXcd& Y) {
  if (X.cwiseAbs().maxCoeff() == 0.0 || Y.cwiseAbs().maxCoeff() == 0.0)
    fail(ErrorKind::usage, "bisectional curvature needs nonzero vectors");
  cplx acc = 0.0;
  for (int i = 0; i < R.n; ++i)
    for (int j = 0; j < R.n; ++j)
      for (int k = 0; k < R.n; ++k)
        for (int l = 0; l < R.n; ++l)
          acc += X[i] * std::conj(X[j]) * Y[k] * std::conj(Y[l]) * R.at(i, j, k, l);
  if (std::abs(acc.imag()) > 1e-8)
    fail(ErrorKind::internal_consistency,
         "bisectional curvature has a nonreal value");
  return acc.real();
}

CurvatureComponents change_frame(const CurvatureComponents& R,
                                 const Eigen::MatrixXcd& new_frame_at_p) {
  const int n = R.n;
  // new_frame = old_frame * T
  const Eigen::MatrixXcd& F1 = R.frame_at_p;
  const Eigen::MatrixXcd T =
      (F1.adjoint() * F1).ldlt().solve(F1.adjoint() * new_frame_at_p);
  const double recon =
      (F1 * T - new_frame_at_p).cwiseAbs().maxCoeff();
  if (recon > 1e-8)
    fail(ErrorKind::usage,
         "target frame does not span the same (1,0) space at this point");
  CurvatureComponents out;
  out.n = n;
  out.point = R.point;
  out.frame_at_p = new_frame_at_p;
  out.R.assign(size_t(n) * n * n * n, cplx(0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx acc = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              for (int c = 0; c < n; ++c)
                for (int dd = 0; dd < n; ++dd)
                  acc += T(a, i) * std::conj(T(b, j)) * T(c, k) *
                         std::conj(T(dd, l)) * R.at(a, b, c, dd);
          out.at(i, j, k, l) = acc;
        }
  return out;
}

namespace {

Eigen::VectorXcd unit_vector_in(const Eigen::MatrixXcd& Gp, SampleRng& rng) {
  const int n = static_cast<int>(Gp.rows());
  Eigen::VectorXcd X(n);
  for (int i = 0; i < n; ++i) X[i] = rng.cgaussian();
  const double len2 = (X.transpose() * Gp * X.conjugate()).value().real();
  return X / std::sqrt(std::max(len2, 1e-300));
}

// the proof's dropped term for one metric: -g^{mu-bar lam} A_mu conj(A_lam)
// with A_mu = X^i Y^k e_k(g_{i mu-bar})(p)
double discarded_term(const Eigen::MatrixXcd& Ginv, const std::vector<cplx>& D1,
                      int n, const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y) {
  Eigen::VectorXcd A = Eigen::VectorXcd::Zero(n);
  for (int mu = 0; mu < n; ++mu)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        A[mu] += X[i] * Y[k] * D1[(i * n + mu) * n + k];
  cplx acc = 0.0;
  for (int mu = 0; mu < n; ++mu)
    for (int lam = 0; lam < n; ++lam)
      acc += Ginv(mu, lam) * A[mu] * std::conj(A[lam]);
  return -acc.real();
}

struct FrameMetricData {
  Eigen::MatrixXcd Gp, Ginv;
  std::vector<cplx> D1;
  CurvatureComponents R;
};

// two-term curvature of `g` in the provided quasi frame
FrameMetricData metric_in_frame(const MetricField& g, const FrameJet& frame) {
  const int n = frame.n;
  FrameMetricData out;
  const JetMatrix G = frame_metric(g, frame);
  std::vector<cplx> D2(n * n * n);
  std::vector<cplx> T2(size_t(n) * n * n * n);
  out.D1.assign(n * n * n, cplx(0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Jet& gij = G[i * n + j];
      for (int k = 0; k < n; ++k) {
        const Jet ek = apply_vector_field(frame.e[k], gij);
        out.D1[(i * n + j) * n + k] = ek.value();
        for (int l = 0; l < n; ++l)
          T2[((size_t(i) * n + j) * n + k) * n + l] =
              apply_vector_field(field_conj(frame.e[l]), ek).value();
      }
      for (int l = 0; l < n; ++l)
        D2[(i * n + j) * n + l] =
            apply_vector_field(field_conj(frame.e[l]), gij).value();
    }
  }
  out.Gp.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.Gp(i, j) = G[i * n + j].value();
  out.Ginv = out.Gp.inverse();

  out.R.n = n;
  out.R.point = frame.base;
  out.R.frame_at_p = frame.value_matrix();
  out.R.R.assign(size_t(n) * n * n * n, cplx(0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx v = -T2[((size_t(i) * n + j) * n + k) * n + l];
          for (int mu = 0; mu < n; ++mu)
            for (int lam = 0; lam < n; ++lam)
              v += out.Ginv(mu, lam) * out.D1[(i * n + mu) * n + k] *
                   D2[(lam * n + j) * n + l];
          out.R.at(i, j, k, l) = v;
        }
  return out;
}

}  // namespace

InequalityReport wu_report(const ChartManifold& m, MetricPtr gA, MetricPtr gB,
                           int samples, uint64_t seed) {
  InequalityReport rep;
  rep.manifold_id = m.name;
  rep.g_id = gA->id();
  rep.h_id = gB->id();
  rep.seed = seed;
  rep.samples = samples;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.max_discarded = -std::numeric_limits<double>::infinity();

  const MetricPtr gSum = make_sum_metric(gA, gB);
  for (int s = 0; s < samples; ++s) {
    SampleRng rng(seed, static_cast<uint64_t>(s));
    const auto pt = m.sample_point(rng);
    const BasePoint base = make_base(pt);

    // quasi holomorphic normal frame of the sum metric
    const FrameJet frame =
        make_normal_frame(*gSum, coordinate_10_frame(m, base), FrameKind::quasi);

    const FrameMetricData dA = metric_in_frame(*gA, frame);
    const FrameMetricData dB = metric_in_frame(*gB, frame);
    const FrameMetricData dS = metric_in_frame(*gSum, frame);

    const Eigen::VectorXcd X = unit_vector_in(dS.Gp, rng);
    const Eigen::VectorXcd Y = unit_vector_in(dS.Gp, rng);

    WuSample row;
    row.index = s;
    row.point = pt;
    row.lhs = bisectional(dS.R, X, Y);
    const double bg = bisectional(dA.R, X, Y);
    const double bh = bisectional(dB.R, X, Y);
    row.rhs = bg + bh;
    row.margin = row.rhs - row.lhs;
    row.discarded = discarded_term(dA.Ginv, dA.D1, m.n, X, Y) +
                    discarded_term(dB.Ginv, dB.D1, m.n, X, Y);
    rep.max_identity_residual =
        std::max(rep.max_identity_residual, std::abs(row.margin + row.discarded));
    rep.min_margin = std::min(rep.min_margin, row.margin);
    rep.max_discarded = std::max(rep.max_discarded, row.discarded);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

MetricPtr augment_metric(const ChartManifold& m, MetricPtr g,
                         const OneFormExpr& alpha, int check_points,
                         uint64_t seed) {
  // precondition: alpha is holomorphic on the sampling set
  double worst = 0.0;
  for (int t = 0; t < check_points; ++t) {
    SampleRng rng(seed, static_cast<uint64_t>(t));
    const auto p = m.sample_point(rng);
    const BasePoint base = make_base(p);
    FormJets aj = alpha.eval(base, 3);
    aj.r = 1;
    aj.s = 0;
    const auto frame = make_pseudo_holomorphic_frame(coordinate_10_frame(m, base));
    const auto rep = is_holomorphic_at(aj, frame);
    worst = std::max(worst, rep.residual_coefficient);
  }
  if (worst > 1e-8)
    fail(ErrorKind::validation,
         "augmenting form is not holomorphic: residual " + std::to_string(worst));

  class AugmentedMetric final : public MetricField {
   public:
    AugmentedMetric(MetricPtr base, OneFormExpr alpha)
        : base_(std::move(base)), alpha_(std::move(alpha)) {}
    int dim() const override { return base_->dim(); }
    std::string id() const override { return base_->id() + "+alpha.alphabar"; }
    JetMatrix eval(const BasePoint& p, int order) const override {
      JetMatrix g = base_->eval(p, order);
      const FormJets a = alpha_.eval(p, order);
      const int d = dim();
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
          const Jet cross = a.comp[x] * a.comp[y].conj();
          g[x * d + y] += cross + cross.conj();
        }
      return g;
    }

   private:
    MetricPtr base_;
    OneFormExpr alpha_;
  };
  return std::make_shared<AugmentedMetric>(std::move(g), alpha);
}

InequalityReport augment_report(const ChartManifold& m, MetricPtr g, MetricPtr h,
                                int samples, uint64_t seed) {
  InequalityReport rep;
  rep.manifold_id = m.name;
  rep.g_id = g->id();
  rep.h_id = h->id();
  rep.seed = seed;
  rep.samples = samples;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.max_discarded = 0.0;

  for (int s = 0; s < samples; ++s) {
    SampleRng rng(seed, static_cast<uint64_t>(s));
    const auto pt = m.sample_point(rng);
    const BasePoint base = make_base(pt);
    const FrameJet frame = make_quasi_holomorphic_frame(
        make_pseudo_holomorphic_frame(coordinate_10_frame(m, base)));
    const FrameMetricData dG = metric_in_frame(*g, frame);
    const FrameMetricData dH = metric_in_frame(*h, frame);
    const Eigen::VectorXcd X = unit_vector_in(dH.Gp, rng);
    const Eigen::VectorXcd Y = unit_vector_in(dH.Gp, rng);

    WuSample row;
    row.index = s;
    row.point = pt;
    row.lhs = bisectional(dH.R, X, Y);  // R^h
    row.rhs = bisectional(dG.R, X, Y);  // R^g
    row.margin = row.rhs - row.lhs;
    row.discarded = 0.0;
    rep.min_margin = std::min(rep.min_margin, row.margin);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace ah
