#include "ahlab/product.hpp"

#include <algorithm>

namespace ah {

namespace {

FormJets rho_jets(int dim, const std::vector<OneFormExpr>& phi,
                  const std::vector<OneFormExpr>& psi, const Eigen::MatrixXcd& a,
                  const BasePoint& base, int order) {
  const auto& ix = FormIndexing::get(dim, 2);
  FormJets out;
  out.dim = dim;
  out.degree = 2;
  out.r = 1;
  out.s = 1;
  out.comp.assign(ix.count(), Jet::constant(dim, order, base, 0.0));
  for (int k = 0; k < static_cast<int>(phi.size()); ++k) {
    const FormJets pk = phi[k].eval(base, order);
    for (int l = 0; l < static_cast<int>(psi.size()); ++l) {
      if (a(k, l) == cplx(0.0)) continue;
      FormJets ql = psi[l].eval(base, order).conj();
      FormJets w = wedge(pk, ql);
      for (int c = 0; c < ix.count(); ++c)
        out.comp[c] += w.comp[c] * (cplx(0.0, 1.0) * a(k, l));
    }
  }
  return out;
}

class ProductAssembledMetric final : public MetricField {
 public:
  ProductAssembledMetric(ChartManifold chart, std::vector<OneFormExpr> phi,
                         std::vector<OneFormExpr> psi, Eigen::MatrixXcd a)
      : chart_(std::move(chart)),
        phi_(std::move(phi)),
        psi_(std::move(psi)),
        a_(std::move(a)) {}

  int dim() const override { return chart_.dim(); }
  std::string id() const override { return chart_.name + ":omega-assembled"; }

  FormJets omega(const BasePoint& base, int order) const {
    const JetMatrix Jj = chart_.j_jets(base, order);
    JetMatrix g0(chart_.dim() * chart_.dim());
    for (size_t i = 0; i < g0.size(); ++i)
      g0[i] = chart_.g0[i].eval_jet(base, order);
    const FormJets block = fundamental_form(hermitianize(g0, Jj), Jj);
    const FormJets rho = rho_jets(chart_.dim(), phi_, psi_, a_, base, order);
    FormJets out = block;
    const FormJets rho_bar = rho.conj();
    for (size_t c = 0; c < out.comp.size(); ++c)
      out.comp[c] += rho.comp[c] + rho_bar.comp[c];
    return out;
  }

  JetMatrix eval(const BasePoint& base, int order) const override {
    const int d = chart_.dim();
    const FormJets om = omega(base, order);
    const JetMatrix Jj = chart_.j_jets(base, order);
    const auto& ix = FormIndexing::get(d, 2);
    JetMatrix h(d * d);
    // omega(d_x, d_y) from the sorted-combination coefficients
    auto omega_entry = [&](int x, int y) -> Jet {
      if (x == y) return Jet::constant(d, order, base, 0.0);
      std::vector<int> combo = {std::min(x, y), std::max(x, y)};
      const Jet& v = om.comp[ix.rank(combo)];
      return x < y ? v : -v;
    };
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        // h(d_x, d_y) = omega(d_x, J d_y) = sum_c omega(d_x, d_c) J^c_y
        Jet acc = Jet::constant(d, order, base, 0.0);
        for (int c = 0; c < d; ++c) {
          if (c == x) continue;
          acc += omega_entry(x, c) * Jj[c * d + y];
        }
        h[x * d + y] = std::move(acc);
      }
    }
    return h;
  }

 private:
  ChartManifold chart_;
  std::vector<OneFormExpr> phi_, psi_;
  Eigen::MatrixXcd a_;
};

}  // namespace

OneFormExpr embed_form(const OneFormExpr& f, const ChartManifold& factor,
                       const ChartManifold& product, int offset) {
  if (f.dim != factor.dim())
    fail(ErrorKind::usage, "form dimension does not match its factor chart");
  std::vector<int> index_map(factor.dim());
  for (int i = 0; i < factor.dim(); ++i) index_map[i] = offset + i;
  OneFormExpr out;
  out.dim = product.dim();
  out.comp.assign(product.dim(), ComplexExpression::constant(0.0));
  for (int i = 0; i < factor.dim(); ++i) {
    out.comp[offset + i].re = f.comp[i].re.remap(index_map, product.coords);
    out.comp[offset + i].im = f.comp[i].im.remap(index_map, product.coords);
  }
  return out;
}

FormJets ProductMetric::rho(const BasePoint& base, int order) const {
  return rho_jets(chart.dim(), phi, psi, a, base, order);
}

FormJets ProductMetric::omega(const BasePoint& base, int order) const {
  return static_cast<const ProductAssembledMetric&>(*h).omega(base, order);
}

ProductMetric product_metric(const ChartManifold& M, const ChartManifold& N,
                             const Eigen::MatrixXcd& a,
                             std::span<const OneFormExpr> phi_on_M,
                             std::span<const OneFormExpr> psi_on_N,
                             int check_points, uint64_t seed) {
  if (a.rows() != static_cast<int>(phi_on_M.size()) ||
      a.cols() != static_cast<int>(psi_on_N.size()))
    fail(ErrorKind::usage, "coefficient matrix shape must match the form bases");

  ProductMetric out;
  out.chart = product_chart(M, N);
  out.a = a;
  for (const auto& f : phi_on_M)
    out.phi.push_back(embed_form(f, M, out.chart, 0));
  for (const auto& f : psi_on_N)
    out.psi.push_back(embed_form(f, N, out.chart, M.dim()));
  auto metric = std::make_shared<ProductAssembledMetric>(out.chart, out.phi,
                                                         out.psi, out.a);
  // validation: symmetry, J-invariance, positivity, and the omega round trip
  const int d = out.chart.dim();
  for (int t = 0; t < check_points; ++t) {
    SampleRng rng(seed, static_cast<uint64_t>(t));
    const auto p = out.chart.sample_point(rng);
    const BasePoint base = make_base(p);
    const JetMatrix hj = metric->eval(base, 1);
    Eigen::MatrixXd hp(d, d);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        if (std::abs(hj[x * d + y].value().imag()) > 1e-10)
          fail(ErrorKind::validation, "assembled product metric is not real");
        hp(x, y) = hj[x * d + y].value().real();
      }
    if ((hp - hp.transpose()).cwiseAbs().maxCoeff() > 1e-10)
      fail(ErrorKind::validation, "assembled product metric is not symmetric");
    const Eigen::MatrixXd Jp = out.chart.j_value(p);
    if ((Jp.transpose() * hp * Jp - hp).cwiseAbs().maxCoeff() > 1e-9)
      fail(ErrorKind::validation, "assembled product metric is not J-invariant");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hp);
    const double lo = eig.eigenvalues().minCoeff();
    if (lo <= 0.0) {
      std::string pt = "(";
      for (size_t q = 0; q < p.size(); ++q)
        pt += (q ? ", " : "") + std::to_string(p[q]);
      pt += ")";
      fail(ErrorKind::positivity,
           "assembled metric is not positive definite at " + pt +
               ": smallest eigenvalue " + std::to_string(lo));
    }
    // round trip: fundamental_form(h, J) must reproduce omega_h
    const FormJets om = metric->omega(base, 1);
    const FormJets back = fundamental_form(hj, out.chart.j_jets(base, 1));
    for (size_t c = 0; c < om.comp.size(); ++c)
      if (std::abs(om.comp[c].value() - back.comp[c].value()) > 1e-9)
        fail(ErrorKind::internal_consistency,
             "omega -> metric -> omega round trip failed");
  }
  out.h = std::move(metric);
  return out;
}

DecomposeResult decompose_product_form(const FormSource& rho,
                                       std::span<const OneFormExpr> phi,
                                       std::span<const OneFormExpr> psi,
                                       ProductFormKind kind,
                                       const ChartManifold& chart, int samples,
                                       uint64_t seed, double tol) {
  const int r = static_cast<int>(phi.size());
  const int s = static_cast<int>(psi.size());
  const int K = r * s;
  const auto& ix = FormIndexing::get(chart.dim(), 2);
  Eigen::MatrixXcd A(samples * ix.count(), K);
  Eigen::VectorXcd b(samples * ix.count());
  for (int t = 0; t < samples; ++t) {
    SampleRng rng(seed, static_cast<uint64_t>(t));
    const auto p = chart.sample_point(rng);
    const BasePoint base = make_base(p);
    const FormValue rv = rho(base, 0).value();
    std::vector<FormValue> dict;
    for (int k = 0; k < r; ++k) {
      const FormValue pk = phi[k].eval(base, 0).value();
      for (int l = 0; l < s; ++l) {
        FormValue ql = psi[l].eval(base, 0).value();
        if (kind == ProductFormKind::mixed) {
          for (auto& c : ql.comp) c = std::conj(c);
          dict.push_back(wedge(pk, ql) * cplx(0.0, 1.0));
        } else {
          dict.push_back(wedge(pk, ql));
        }
      }
    }
    for (int c = 0; c < ix.count(); ++c) {
      const int row = t * ix.count() + c;
      b[row] = rv.comp[c];
      for (int u = 0; u < K; ++u) A(row, u) = dict[u].comp[c];
    }
  }
  const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
  DecomposeResult out;
  out.a.resize(r, s);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < s; ++l) out.a(k, l) = x[k * s + l];
  out.residual = (A * x - b).cwiseAbs().maxCoeff();
  out.representable = out.residual < tol;
  return out;
}

}  // namespace ah
