#pragma once

#include "ahlab/cframes.hpp"

namespace ah {

/// Sorted index combinations for degree-d forms over `dim` coordinates.
class FormIndexing {
 public:
  static const FormIndexing& get(int dim, int degree);

  int count() const { return static_cast<int>(combos_.size()); }
  const std::vector<int>& combo(int i) const { return combos_[i]; }
  /// Rank of a sorted combination; -1 if not found.
  int rank(std::span<const int> sorted) const;

 private:
  FormIndexing(int dim, int degree);
  std::vector<std::vector<int>> combos_;
  int dim_, degree_;
};

/// Value of a degree-d form at a point: complex coefficients against
/// wedge products of the coordinate coframe, one per sorted combination.
struct FormValue {
  int dim = 0, degree = 0;
  std::vector<cplx> comp;

  static FormValue zero(int dim, int degree);
  double max_abs() const;
  FormValue operator+(const FormValue& o) const;
  FormValue operator-(const FormValue& o) const;
  FormValue operator*(cplx s) const;
  /// alpha(v_1, ..., v_d) by determinant expansion.
  cplx evaluate(const std::vector<Eigen::VectorXcd>& vectors) const;
};

/// A degree-d form with jet coefficients; `r`,`s` carry the declared type
/// when known (r + s == degree), -1 otherwise.
struct FormJets {
  int dim = 0, degree = 0;
  int r = -1, s = -1;
  std::vector<Jet> comp;

  FormValue value() const;
  FormJets conj() const;
};

FormJets form_from_jets(int degree, std::vector<Jet> comp, int r = -1, int s = -1);

/// d(alpha) via coefficient derivatives; order drops by one.
FormJets exterior_d(const FormJets& alpha);

/// Interior product with a field (jet level) or a vector (pointwise).
FormJets interior(const FormJets& alpha, std::span<const Jet> field);
FormValue interior(const FormValue& alpha, const Eigen::VectorXcd& v);

FormJets wedge(const FormJets& a, const FormJets& b);
FormValue wedge(const FormValue& a, const FormValue& b);

/// Cartan formula: L_X alpha = i_X d alpha + d i_X alpha.
FormJets lie_derivative_cartan(const FormJets& alpha, std::span<const Jet> field);

/// Components in the coframe dual to (e, e-bar) at a point; `frame_full`
/// is the 2n x 2n matrix [E | conj(E)]. Slot k < n is theta^k (type (1,0)),
/// slot k >= n is theta-bar^(k-n).
FormValue to_frame_coframe(const FormValue& alpha, const Eigen::MatrixXcd& frame_full);
FormValue from_frame_coframe(const FormValue& beta, const Eigen::MatrixXcd& frame_full);

/// Projection onto type (r,s) at a point, using the (1,0) splitting of the
/// given frame.
FormValue project_type(const FormValue& alpha, const Eigen::MatrixXcd& frame_full,
                       int r, int s);
/// Max coefficient (in the frame coframe) of all components NOT of type (r,s).
double type_residual(const FormValue& alpha, const Eigen::MatrixXcd& frame_full,
                     int r, int s);

/// dbar(alpha) = (d alpha)^(r, s+1) evaluated at the base point.
FormValue dbar(const FormJets& alpha, const Eigen::MatrixXcd& frame_full);

struct HolomorphyReport {
  bool holomorphic = false;
  double residual_coefficient = 0.0;  // max |e_k-bar(alpha_I)(p)|
  double residual_contraction = 0.0;  // max frame coefficient of i_{e_k-bar} dbar alpha
  double route_disagreement = 0.0;    // coefficient-wise difference of the routes
};

/// Def 6.2 / Lemma 6.4 test for an (r,0)-form at the frame's base point.
/// The frame must be pseudo holomorphic at p.
HolomorphyReport is_holomorphic_at(const FormJets& alpha, const FrameJet& frame,
                                   double tol = 1e-8);

/// omega_g(X, Y) = g(JX, Y) as a 2-form with jet coefficients.
FormJets fundamental_form(const JetMatrix& g_jets, const JetMatrix& j_jets);

/// Complex-valued expression as a (re, im) pair of real expressions.
struct ComplexExpression {
  Expression re = Expression::literal(0.0);
  Expression im = Expression::literal(0.0);
  Jet eval_jet(const BasePoint& base, int order) const;
  static ComplexExpression constant(cplx v);
};

/// One-form with complex-expression coefficients against the coordinate
/// coframe; the bridge from user-level form input to jet evaluation.
struct OneFormExpr {
  int dim = 0;
  std::vector<ComplexExpression> comp;

  FormJets eval(const BasePoint& base, int order) const;
  OneFormExpr scaled(cplx c) const;
};

/// dz_k = dx_k + i dy_k on a chart whose k-th complex line is spanned by
/// coordinates (2k, 2k+1). Meaningful on standard-J (integrable) charts.
OneFormExpr dz_form(const ChartManifold& m, int k);

/// Random degree-<=1 polynomial (1,0)-form field (a random form composed
/// with the (0,1)-annihilating projector), for property checks.
FormJets random_10_form(const ChartManifold& m, const BasePoint& base, int order,
                        SampleRng& rng);

/// Random polynomial (0,1)-vector field.
std::vector<Jet> random_01_field(const ChartManifold& m, const BasePoint& base,
                                 int order, SampleRng& rng);

}  // namespace ah
