#pragma once

#include "ahlab/curvature.hpp"

namespace ah {

/// A metric on a product chart assembled from
///   omega_h = pi_1* omega_{h1} + pi_2* omega_{h2} + rho + rho-bar,
///   rho     = i sum_{kl} a_kl phi_k ^ conj(psi_l),
/// converted back through h(X, Y) = omega_h(X, J Y).
struct ProductMetric {
  ChartManifold chart;            // product chart (block J, block g0)
  MetricPtr h;                    // assembled metric
  std::vector<OneFormExpr> phi;   // bases remapped to product coordinates
  std::vector<OneFormExpr> psi;
  Eigen::MatrixXcd a;

  /// The mixing form rho as jets at a point.
  FormJets rho(const BasePoint& base, int order) const;
  /// omega_h as jets at a point.
  FormJets omega(const BasePoint& base, int order) const;
};

/// Embeds a factor form into the product chart (offset = first coordinate
/// index of the factor inside the product).
OneFormExpr embed_form(const OneFormExpr& f, const ChartManifold& factor,
                       const ChartManifold& product, int offset);

/// Builds and validates the product metric; throws a positivity error
/// naming the sample point and smallest eigenvalue when `a` is too large.
ProductMetric product_metric(const ChartManifold& M, const ChartManifold& N,
                             const Eigen::MatrixXcd& a,
                             std::span<const OneFormExpr> phi_on_M,
                             std::span<const OneFormExpr> psi_on_N,
                             int check_points = 50, uint64_t seed = 7);

using FormSource = std::function<FormJets(const BasePoint&, int)>;

enum class ProductFormKind {
  holomorphic,  // dictionary phi_k ^ psi_l      (holomorphic (2,0) forms)
  mixed,        // dictionary i phi_k ^ conj(psi_l)  (the omega_h mixing term)
};

struct DecomposeResult {
  Eigen::MatrixXcd a;
  double residual = 0.0;
  bool representable = false;
};

/// Least-squares fit of a 2-form against the basis products at seeded
/// sample points. A residual above `tol` is reported, not thrown.
DecomposeResult decompose_product_form(const FormSource& rho,
                                       std::span<const OneFormExpr> phi,
                                       std::span<const OneFormExpr> psi,
                                       ProductFormKind kind,
                                       const ChartManifold& chart, int samples,
                                       uint64_t seed, double tol = 1e-6);

}  // namespace ah
