#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ahlab/expression.hpp"
#include "ahlab/jetlinalg.hpp"

namespace ah {

/// A Riemannian metric given as jets of its real-coordinate components.
/// Implementations must return a symmetric 2n x 2n matrix (row-major) of
/// real-valued jets at any chart point.
class MetricField {
 public:
  virtual ~MetricField() = default;
  virtual int dim() const = 0;
  virtual JetMatrix eval(const BasePoint& base, int order) const = 0;
  virtual std::string id() const = 0;
};

using MetricPtr = std::shared_ptr<const MetricField>;

/// g(X,Y) = (g0(X,Y) + g0(JX,JY)) / 2, jet-wise; the almost Hermitian
/// average of a seed metric.
JetMatrix hermitianize(const JetMatrix& g0, const JetMatrix& J);

/// Metric backed by expression matrices: hermitianize(g0) for the given J.
MetricPtr make_hermitianized_metric(std::string id, int dim,
                                    std::vector<Expression> g0,
                                    std::vector<Expression> J);

MetricPtr make_sum_metric(MetricPtr a, MetricPtr b);
MetricPtr make_scaled_metric(double s, MetricPtr m);

}  // namespace ah
