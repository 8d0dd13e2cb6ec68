#pragma once

#include <functional>

#include "ahlab/connection.hpp"
#include "ahlab/forms.hpp"

namespace ah {

/// The (1,1)-part R_{i j-bar k l-bar} of the canonical-connection curvature
/// at a point, in a declared (1,0)-frame.
struct CurvatureComponents {
  int n = 0;
  BasePoint point;
  Eigen::MatrixXcd frame_at_p;  // 2n x n
  std::vector<cplx> R;          // n^4, index ((i*n+j)*n+k)*n+l

  cplx at(int i, int j, int k, int l) const {
    return R[((i * size_t(n) + j) * n + k) * n + l];
  }
  cplx& at(int i, int j, int k, int l) {
    return R[((i * size_t(n) + j) * n + k) * n + l];
  }
  /// max |R_{ij-bar kl-bar} - conj(R_{ji-bar lk-bar})|.
  double hermitian_symmetry_residual() const;
};

/// R(e_i, e_j-bar, e_k, e_l-bar) from the curvature definition, by
/// differentiating Christoffel jets in the given frame (any frame works).
CurvatureComponents curvature_from_definition(const MetricField& g,
                                              const FrameJet& frame);

enum class QuasiMode { quasi, normal };

struct QuasiCurvatureResult {
  CurvatureComponents R;
  FrameJet frame;
  /// ||nabla_{e_k} nabla_{e_j-bar} e_i(p)|| over all indices.
  double second_derivative_residual = 0.0;
  /// normal mode only: |one-term - two-term| over all components.
  double normal_consistency_residual = 0.0;
};

/// Builds a quasi holomorphic frame at p (normal for `QuasiMode::normal`)
/// and evaluates the two-term curvature formula
///   R = -e_l-bar e_k (g_{ij-bar}) + g^{mu-bar lambda} e_k(g_{i mu-bar}) e_l-bar(g_{lambda j-bar});
/// in normal mode only the second-derivative term survives.
QuasiCurvatureResult curvature_quasi_formula(const ChartManifold& m,
                                             const MetricField& g,
                                             const BasePoint& p,
                                             QuasiMode mode = QuasiMode::quasi);

/// X^i conj(X^j) Y^k conj(Y^l) R_{ij-bar kl-bar}; the imaginary part is
/// checked below 1e-8 and dropped.
double bisectional(const CurvatureComponents& R, const Eigen::VectorXcd& X,
                   const Eigen::VectorXcd& Y);

/// Re-expresses curvature components in another (1,0)-frame at the same
/// point (4-index change of basis).
CurvatureComponents change_frame(const CurvatureComponents& R,
                                 const Eigen::MatrixXcd& new_frame_at_p);

struct WuSample {
  int index = 0;
  std::vector<double> point;
  double lhs = 0.0;        // R^{g+h}(X, X-bar, Y, Y-bar)
  double rhs = 0.0;        // R^g + R^h
  double margin = 0.0;     // rhs - lhs
  double discarded = 0.0;  // the proof's dropped term; must be <= 0
};

struct InequalityReport {
  std::string manifold_id, g_id, h_id;
  uint64_t seed = 0;
  int samples = 0;
  std::vector<WuSample> rows;
  double min_margin = 0.0;
  double max_discarded = 0.0;        // max over samples (nonpositivity check)
  double max_identity_residual = 0.0;  // |margin + discarded| consistency
};

/// Samples points and unit (1,0)-vector pairs and compares bisectional
/// curvatures of gA+gB against gA, gB separately, in a quasi holomorphic
/// normal frame of the sum metric.
InequalityReport wu_report(const ChartManifold& m, MetricPtr gA, MetricPtr gB,
                           int samples, uint64_t seed);

/// h = g + alpha (x) conj(alpha) + conj(alpha) (x) alpha for a holomorphic
/// (1,0)-form alpha; throws when alpha fails the holomorphy test.
MetricPtr augment_metric(const ChartManifold& m, MetricPtr g,
                         const OneFormExpr& alpha, int check_points = 20,
                         uint64_t seed = 7);

/// R^h <= R^g sampling report for an augmented metric (rows reuse WuSample
/// with lhs = R^h, rhs = R^g, discarded = 0).
InequalityReport augment_report(const ChartManifold& m, MetricPtr g, MetricPtr h,
                                int samples, uint64_t seed);

}  // namespace ah
