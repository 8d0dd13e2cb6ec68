#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahlab/metric.hpp"
#include "ahlab/rng.hpp"

namespace ah {

struct DomainInterval {
  double lo, hi;
};

/// A chart-described almost Hermitian manifold: 2n real coordinates, an
/// almost complex structure J and a seed metric g0 given entrywise as
/// expressions, and a sampling box. The working metric is hermitianize(g0).
class ChartManifold {
 public:
  std::string name;
  int n = 0;
  std::vector<std::string> coords;     // 2n names
  std::vector<Expression> J;           // 2n x 2n row-major
  std::vector<Expression> g0;          // 2n x 2n row-major
  std::vector<DomainInterval> domain;  // per coordinate
  std::map<std::string, std::vector<Expression>> extra_seeds;

  int dim() const { return 2 * n; }

  JetMatrix j_jets(const BasePoint& base, int order) const;
  Eigen::MatrixXd j_value(std::span<const double> p) const;
  Eigen::MatrixXd g0_value(std::span<const double> p) const;

  /// The hermitianized metric for a named seed ("default" is g0).
  MetricPtr metric(const std::string& seed = "default") const;

  /// Uniform point in the domain box, keeping a 5% margin from the
  /// boundary so finite-difference probes stay inside.
  std::vector<double> sample_point(SampleRng& rng) const;

  std::string config_text() const;
  static ChartManifold from_config_text(const std::string& text);
  static ChartManifold from_config_file(const std::string& path);
};

/// Max-norm of J(p)^2 + Id.
double check_acs(const ChartManifold& m, std::span<const double> p);
double check_acs(const Eigen::MatrixXd& j_at_p);

/// Nijenhuis tensor N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] at the
/// base point of the jets. X, Y need order >= 2; J jets order >= 2.
Eigen::VectorXd nijenhuis(const JetMatrix& j_jets, std::span<const Jet> X,
                          std::span<const Jet> Y);

struct ValidationSummary {
  int points = 0;
  double max_acs_residual = 0.0;
  double max_g0_asymmetry = 0.0;
  double min_g0_eigenvalue = 0.0;
  double max_j_invariance_residual = 0.0;
};

/// Samples the domain and checks J^2 = -Id, g0 symmetric positive definite,
/// and J-invariance of the hermitianized metric. Throws a validation error
/// when a residual exceeds 1e-10 (or g0 is not positive definite).
ValidationSummary validate_manifold(const ChartManifold& m, int points,
                                    uint64_t seed, bool throw_on_failure = true);

/// Built-in manifolds: flat_c1, flat_c2, kahler_exp, twisted_torus,
/// product_tt. Aliases: flat_cn -> flat_c2, product -> product_tt.
std::vector<ChartManifold> catalog();
ChartManifold find_manifold(const std::string& name_or_path);

/// True when J equals the standard block structure (J dx_k = dy_k) at a
/// few sampled points; gates operations that assume dz_k is meaningful.
bool has_standard_j(const ChartManifold& m);

/// Product chart of two factors: coordinates are renamed positionally to
/// x1,y1,...; J and g0 are block diagonal.
ChartManifold product_chart(const ChartManifold& a, const ChartManifold& b);

}  // namespace ah
