#include "doctest.h"

#include <cmath>

#include "ahlab/product.hpp"

using namespace ah;

namespace {

Eigen::MatrixXcd scalar_matrix(cplx v) {
  Eigen::MatrixXcd a(1, 1);
  a(0, 0) = v;
  return a;
}

}  // namespace

TEST_CASE("product with a = 0: block metric, mixed bisectional vanishes") {
  auto flat1 = find_manifold("flat_c1");
  std::vector<OneFormExpr> phi = {dz_form(flat1, 0)}, psi = {dz_form(flat1, 0)};
  auto pm = product_metric(flat1, flat1, scalar_matrix(0.0), phi, psi);
  // block diagonal: coincides with the product chart's default metric
  SampleRng rng(47, 0);
  auto p = pm.chart.sample_point(rng);
  auto base = make_base(p);
  auto h = pm.h->eval(base, 1);
  auto g = pm.chart.metric()->eval(base, 1);
  for (size_t t = 0; t < h.size(); ++t)
    CHECK((h[t] - g[t]).max_abs_coeff() < 1e-12);

  auto q = curvature_quasi_formula(pm.chart, *pm.h, base);
  Eigen::VectorXcd X(2), Y(2);
  X << 1.0, 0.0;  // along the first factor
  Y << 0.0, 1.0;  // along the second
  CHECK(std::abs(bisectional(q.R, X, Y)) < 1e-12);
}

TEST_CASE("torus x torus with a = 0.3: positive, flat, and decomposable") {
  auto flat1 = find_manifold("flat_c1");
  std::vector<OneFormExpr> phi = {dz_form(flat1, 0)}, psi = {dz_form(flat1, 0)};
  auto pm = product_metric(flat1, flat1, scalar_matrix(0.3), phi, psi);

  SampleRng rng(57, 0);
  for (int i = 0; i < 25; ++i) {
    auto p = pm.chart.sample_point(rng);
    auto q = curvature_quasi_formula(pm.chart, *pm.h, make_base(p));
    Eigen::VectorXcd X(2), Y(2);
    for (int t = 0; t < 2; ++t) {
      X[t] = rng.cgaussian();
      Y[t] = rng.cgaussian();
    }
    CHECK(bisectional(q.R, X, Y) <= 1e-9);
  }

  const auto rr = decompose_product_form(
      [&](const BasePoint& b, int o) { return pm.rho(b, o); }, pm.phi, pm.psi,
      ProductFormKind::mixed, pm.chart, 25, 7);
  CHECK(std::abs(rr.a(0, 0) - cplx(0.3)) < 1e-9);
  CHECK(rr.residual < 1e-9);
  CHECK(rr.representable);
}

TEST_CASE("a = 2.0 violates positivity with a named point and eigenvalue") {
  auto flat1 = find_manifold("flat_c1");
  std::vector<OneFormExpr> phi = {dz_form(flat1, 0)}, psi = {dz_form(flat1, 0)};
  try {
    (void)product_metric(flat1, flat1, scalar_matrix(2.0), phi, psi);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::positivity);
    CHECK(std::string(e.what()).find("eigenvalue") != std::string::npos);
  }
}

TEST_CASE("decompose: zero form gives zero coefficients") {
  auto flat1 = find_manifold("flat_c1");
  std::vector<OneFormExpr> phi = {dz_form(flat1, 0)}, psi = {dz_form(flat1, 0)};
  auto pm = product_metric(flat1, flat1, scalar_matrix(0.1), phi, psi);
  const auto rr = decompose_product_form(
      [&](const BasePoint& b, int o) {
        FormJets z;
        z.dim = 4;
        z.degree = 2;
        z.comp.assign(FormIndexing::get(4, 2).count(),
                      Jet::constant(4, std::max(o, 0), b, 0.0));
        return z;
      },
      pm.phi, pm.psi, ProductFormKind::mixed, pm.chart, 20, 7);
  CHECK(std::abs(rr.a(0, 0)) < 1e-12);
  CHECK(rr.residual < 1e-12);
}

TEST_CASE("decompose flags a non-constant combination as non-representable") {
  auto flat1 = find_manifold("flat_c1");
  std::vector<OneFormExpr> phi = {dz_form(flat1, 0)}, psi = {dz_form(flat1, 0)};
  auto pm = product_metric(flat1, flat1, scalar_matrix(0.0), phi, psi);
  // rho = z1-bar dz1 ^ dz2 on the product: multiply the embedded dz1 by z1-bar
  OneFormExpr zbar_dz1;
  zbar_dz1.dim = 4;
  zbar_dz1.comp.assign(4, ComplexExpression::constant(0.0));
  const auto x = Expression::variable(0, "x1"), y = Expression::variable(1, "y1");
  // (x - i y)(dx + i dy) = (x dx + y dy) + i(x dy - y dx)
  zbar_dz1.comp[0] = {x, -y};
  zbar_dz1.comp[1] = {y, x};
  const auto rho = [&](const BasePoint& b, int o) {
    return wedge(zbar_dz1.eval(b, o), pm.psi[0].eval(b, o));
  };
  const auto rr = decompose_product_form(rho, pm.phi, pm.psi,
                                         ProductFormKind::holomorphic, pm.chart,
                                         25, 7);
  CHECK(rr.residual > 1e-3);
  CHECK_FALSE(rr.representable);
}

TEST_CASE("decompose round-trips in the holomorphic dictionary too") {
  auto flat1 = find_manifold("flat_c1");
  std::vector<OneFormExpr> phi = {dz_form(flat1, 0)}, psi = {dz_form(flat1, 0)};
  auto pm = product_metric(flat1, flat1, scalar_matrix(0.0), phi, psi);
  const cplx want(0.25, -0.7);
  const auto rho = [&](const BasePoint& b, int o) {
    FormJets w = wedge(pm.phi[0].eval(b, o), pm.psi[0].eval(b, o));
    for (auto& c : w.comp) c = c * want;
    return w;
  };
  const auto rr = decompose_product_form(rho, pm.phi, pm.psi,
                                         ProductFormKind::holomorphic, pm.chart,
                                         20, 7);
  CHECK(std::abs(rr.a(0, 0) - want) < 1e-10);
  CHECK(rr.residual < 1e-10);
}

TEST_CASE("product of twisted tori: mixed-direction bisectional vanishes for a = 0") {
  auto tt = find_manifold("twisted_torus");
  // no holomorphic forms supplied: a is 0 x 0 and the metric is the block one
  auto pm = product_metric(tt, tt, Eigen::MatrixXcd(0, 0), {}, {}, 10);
  CHECK(pm.chart.n == 4);
  SampleRng rng(67, 0);
  auto p = pm.chart.sample_point(rng);
  auto q = curvature_quasi_formula(pm.chart, *pm.h, make_base(p));
  Eigen::VectorXcd X = Eigen::VectorXcd::Zero(4), Y = Eigen::VectorXcd::Zero(4);
  X[0] = rng.cgaussian();
  X[1] = rng.cgaussian();
  Y[2] = rng.cgaussian();
  Y[3] = rng.cgaussian();
  CHECK(std::abs(bisectional(q.R, X, Y)) < 1e-9);
}
