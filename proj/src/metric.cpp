#include "ahlab/metric.hpp"

#include <cmath>

namespace ah {

JetMatrix hermitianize(const JetMatrix& g0, const JetMatrix& J) {
  const int dim = static_cast<int>(std::sqrt(double(g0.size())) + 0.5);
  JetMatrix g(g0.size());
  // g_ab = (g0_ab + J^c_a g0_cd J^d_b) / 2
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      Jet acc = g0[a * dim + b];
      for (int c = 0; c < dim; ++c) {
        Jet row;  // sum_d g0_cd J^d_b
        bool first = true;
        for (int dd = 0; dd < dim; ++dd) {
          Jet t = g0[c * dim + dd] * J[dd * dim + b];
          if (first) {
            row = std::move(t);
            first = false;
          } else {
            row += t;
          }
        }
        acc += J[c * dim + a] * row;
      }
      g[a * dim + b] = acc * cplx(0.5);
      if (b != a) g[b * dim + a] = g[a * dim + b];
    }
  }
  return g;
}

namespace {

class HermitianizedMetric final : public MetricField {
 public:
  HermitianizedMetric(std::string id, int dim, std::vector<Expression> g0,
                      std::vector<Expression> J)
      : id_(std::move(id)), dim_(dim), g0_(std::move(g0)), J_(std::move(J)) {}

  int dim() const override { return dim_; }
  std::string id() const override { return id_; }

  JetMatrix eval(const BasePoint& base, int order) const override {
    JetMatrix g0(dim_ * dim_), J(dim_ * dim_);
    for (int i = 0; i < dim_ * dim_; ++i) {
      g0[i] = g0_[i].eval_jet(base, order);
      J[i] = J_[i].eval_jet(base, order);
    }
    return hermitianize(g0, J);
  }

 private:
  std::string id_;
  int dim_;
  std::vector<Expression> g0_, J_;
};

class SumMetric final : public MetricField {
 public:
  SumMetric(MetricPtr a, MetricPtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->dim() != b_->dim())
      fail(ErrorKind::usage, "metric sum requires matching chart dimensions");
  }

  int dim() const override { return a_->dim(); }
  std::string id() const override { return a_->id() + "+" + b_->id(); }

  JetMatrix eval(const BasePoint& base, int order) const override {
    JetMatrix ga = a_->eval(base, order);
    const JetMatrix gb = b_->eval(base, order);
    for (size_t i = 0; i < ga.size(); ++i) ga[i] += gb[i];
    return ga;
  }

 private:
  MetricPtr a_, b_;
};

class ScaledMetric final : public MetricField {
 public:
  ScaledMetric(double s, MetricPtr m) : s_(s), m_(std::move(m)) {
    if (s <= 0.0) fail(ErrorKind::usage, "metric scale must be positive");
  }

  int dim() const override { return m_->dim(); }
  std::string id() const override {
    return std::to_string(s_) + "*" + m_->id();
  }

  JetMatrix eval(const BasePoint& base, int order) const override {
    JetMatrix g = m_->eval(base, order);
    for (auto& j : g) j = j * cplx(s_);
    return g;
  }

 private:
  double s_;
  MetricPtr m_;
};

}  // namespace

MetricPtr make_hermitianized_metric(std::string id, int dim,
                                    std::vector<Expression> g0,
                                    std::vector<Expression> J) {
  return std::make_shared<HermitianizedMetric>(std::move(id), dim, std::move(g0),
                                               std::move(J));
}

MetricPtr make_sum_metric(MetricPtr a, MetricPtr b) {
  return std::make_shared<SumMetric>(std::move(a), std::move(b));
}

MetricPtr make_scaled_metric(double s, MetricPtr m) {
  return std::make_shared<ScaledMetric>(s, std::move(m));
}

}  // namespace ah
