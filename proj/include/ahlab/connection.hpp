#pragma once

#include "ahlab/cframes.hpp"

namespace ah {

/// Canonical-connection coefficients in a (1,0)-frame, as jets at the
/// frame's base point:
///   nabla_{e_j} e_i      = gamma_hol[i][j][k] e_k
///   nabla_{e_j-bar} e_i  = gamma_anti[i][j][k] e_k   (= c_{ij-bar}^k)
struct ChristoffelAtPoint {
  int n = 0;
  FrameJet frame;
  JetMatrix frame_metric;       // n x n jets g_{ij-bar}
  std::vector<Jet> gamma_hol;   // n^3 in (i, j, k) order
  std::vector<Jet> gamma_anti;  // n^3 in (i, j, k) order

  const Jet& hol(int i, int j, int k) const { return gamma_hol[(i * n + j) * n + k]; }
  const Jet& anti(int i, int j, int k) const { return gamma_anti[(i * n + j) * n + k]; }
};

/// g_{ij-bar} = g(e_i, e_j-bar) as jets in the given frame.
JetMatrix frame_metric(const MetricField& g, const FrameJet& frame);

/// gamma_anti is Lemma-style [e_j-bar, e_i]^(1,0); gamma_hol solves metric
/// compatibility against the Gram matrix:
///   Gamma_{ij}^l g_{l mu-bar} = e_j(g_{i mu-bar}) - conj(c_{mu j-bar}^nu) g_{i nu-bar}.
ChristoffelAtPoint canonical_connection(const MetricField& g, const FrameJet& frame);

/// A complexified field in frame components: X = a^i e_i + b^i e_i-bar.
struct FieldInFrame {
  std::vector<Jet> a, b;
};

FieldInFrame to_frame(const FrameJet& frame, std::span<const Jet> coord_field,
                      int order);
std::vector<Jet> to_coordinates(const FrameJet& frame, const FieldInFrame& X,
                                int order);
FieldInFrame constant_frame_field(const FrameJet& frame,
                                  const Eigen::VectorXcd& e_coeffs,
                                  const Eigen::VectorXcd& ebar_coeffs);

FieldInFrame covariant_derivative(const ChristoffelAtPoint& chr,
                                  const FieldInFrame& X, const FieldInFrame& Y);

/// tau(X,Y) = nabla_X Y - nabla_Y X - [X,Y] at the base point, with its
/// (1,0)/(0,1) split in coordinate components.
struct TorsionValue {
  Eigen::VectorXcd part10, part01;
  Eigen::VectorXcd total() const { return part10 + part01; }
};

TorsionValue torsion(const ChristoffelAtPoint& chr, const FieldInFrame& X,
                     const FieldInFrame& Y);

struct AxiomResiduals {
  double metric_compat = 0.0;  // X g(Y,Z) - g(DX Y, Z) - g(Y, DX Z)
  double j_compat = 0.0;       // type preservation of (1,0) fields
  double torsion11 = 0.0;      // tau(X, Y-bar)
  double max() const { return std::max({metric_compat, j_compat, torsion11}); }
};

AxiomResiduals verify_axioms(const ChartManifold& m, const MetricPtr& g,
                             std::span<const double> p, uint64_t seed,
                             int triples = 20);

struct OracleResult {
  int unknowns = 0;
  int rank = 0;
  double match_residual = 0.0;  // axioms solve vs closed-form construction
};

/// Assembles the linear system nabla g = 0, nabla J = 0, tau^(1,1) = 0 in
/// the unknown coordinate-frame connection coefficients, asserts a unique
/// solution, and checks it against canonical_connection.
OracleResult connection_by_axioms_oracle(const ChartManifold& m,
                                         const MetricPtr& g,
                                         std::span<const double> p);

}  // namespace ah
