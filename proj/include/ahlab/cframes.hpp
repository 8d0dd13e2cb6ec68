#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "ahlab/fields.hpp"
#include "ahlab/manifold.hpp"

namespace ah {

enum class VectorType { type10, type01, mixed };

/// A complexified vector field with jet coefficients in the real
/// coordinate basis.
struct VectorFieldJet {
  std::vector<Jet> comp;
  VectorType tag = VectorType::mixed;
};

/// n complexified (1,0)-fields with jet coefficients near a common base
/// point. Frames produced by the constructors below are (1,0) at every
/// point of their jet neighbourhood, not just at the base.
struct FrameJet {
  int n = 0;
  int order = 0;
  BasePoint base;
  std::vector<std::vector<Jet>> e;       // n fields x 2n components
  std::vector<std::vector<Jet>> trans;   // optional f_ij relative to a parent
  Eigen::MatrixXd jp;                    // J at the base point, for projections

  int dim() const { return 2 * n; }

  /// 2n x n matrix of field values at the base point.
  Eigen::MatrixXcd value_matrix() const;
  /// [E | conj(E)], the change-of-basis matrix to (e, e-bar) components.
  Eigen::MatrixXcd full_value_matrix() const;
  double condition_number() const;
};

/// c_{ij-bar}^k jets: [e_j-bar, e_i]^(1,0) = c_{ij-bar}^k e_k.
struct StructureFunctions {
  int n = 0;
  std::vector<Jet> c;  // n^3 in (i, j, k) order

  const Jet& at(int i, int j, int k) const { return c[(i * n + j) * n + k]; }
  Jet& at(int i, int j, int k) { return c[(i * n + j) * n + k]; }
};

Eigen::MatrixXcd projection_10_matrix(const Eigen::MatrixXd& j_at_p);
Eigen::VectorXcd projection_10(const Eigen::MatrixXd& j_at_p,
                               const Eigen::VectorXcd& v);
VectorFieldJet projection_10(const JetMatrix& j_jets, std::span<const Jet> v);

/// [X, Y] on coordinate-component jets; order drops by one.
VectorFieldJet lie_bracket(const VectorFieldJet& X, const VectorFieldJet& Y);

/// Projects the 2n coordinate fields and keeps n of them, chosen greedily
/// to maximize the smallest singular value of the frame matrix at p.
FrameJet coordinate_10_frame(const ChartManifold& m, const BasePoint& base,
                             int order = 3);
FrameJet coordinate_10_frame(const JetMatrix& j_jets, const BasePoint& base);

StructureFunctions structure_functions(const FrameJet& frame);

/// Components of a coordinate field in the (e, e-bar) basis: the first n
/// jets multiply e, the last n multiply e-bar.
std::vector<Jet> frame_components(const FrameJet& frame,
                                  std::span<const Jet> field, int order);

/// First-derivative prescriptions for a frame transition f: one value per
/// (i, j, k): v_k(f_ij)(p). Empty means zero.
using HolDerivTargets = std::vector<cplx>;  // n^3 in (i, j, k) order

FrameJet make_pseudo_holomorphic_frame(
    const FrameJet& base, const HolDerivTargets& hol_targets = {});
FrameJet make_quasi_holomorphic_frame(
    const FrameJet& base, const HolDerivTargets& hol_targets = {});

enum class FrameKind { pseudo, quasi };

/// Pseudo/quasi holomorphic frame whose canonical-connection derivatives
/// vanish at p (equivalently d g_{ij-bar}(p) = 0). Defined in connection.cpp.
FrameJet make_normal_frame(const MetricField& g, const FrameJet& base,
                           FrameKind kind);

/// max over (i,j) of ||[e_j-bar, e_i]^(1,0)(p)||_inf.
double pseudo_residual(const FrameJet& frame, const Eigen::MatrixXd& j_at_p);
/// max over (i,j,k) of ||[e_k, [e_j-bar, e_i]]^(1,0)(p)||_inf.
double quasi_residual(const FrameJet& frame, const Eigen::MatrixXd& j_at_p);
/// max over (i,j,a) of |d_a g_{ij-bar}(p)|.
double normal_residual(const MetricField& g, const FrameJet& frame);

/// ||P v - v||_inf at the base point, for checking (1,0) tags.
double type10_residual(const Eigen::MatrixXd& j_at_p, const Eigen::VectorXcd& v);

}  // namespace ah
