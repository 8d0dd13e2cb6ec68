#include "ahlab/manifold.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "ahlab/fields.hpp"
#include "json.hpp"

namespace ah {

using nlohmann::json;

std::vector<Jet> field_bracket(std::span<const Jet> X, std::span<const Jet> Y) {
  const int dim = static_cast<int>(X.size());
  const int order = std::min(X[0].order(), Y[0].order());
  if (order < 1) fail(ErrorKind::usage, "field bracket needs jets of order >= 1");
  std::vector<Jet> out(dim);
  for (int a = 0; a < dim; ++a) {
    Jet acc;
    bool first = true;
    for (int b = 0; b < dim; ++b) {
      Jet t = X[b].truncated(order - 1) * Y[a].truncated(order).derivative(b) -
              Y[b].truncated(order - 1) * X[a].truncated(order).derivative(b);
      if (first) {
        acc = std::move(t);
        first = false;
      } else {
        acc += t;
      }
    }
    out[a] = std::move(acc);
  }
  return out;
}

std::vector<Jet> matrix_apply(const JetMatrix& M, std::span<const Jet> v,
                              int order) {
  const int dim = static_cast<int>(v.size());
  std::vector<Jet> out(dim);
  for (int a = 0; a < dim; ++a) {
    Jet acc;
    bool first = true;
    for (int b = 0; b < dim; ++b) {
      Jet t = M[a * dim + b].truncated(order) * v[b].truncated(order);
      if (first) {
        acc = std::move(t);
        first = false;
      } else {
        acc += t;
      }
    }
    out[a] = std::move(acc);
  }
  return out;
}

std::vector<Jet> field_conj(std::span<const Jet> v) {
  std::vector<Jet> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].conj();
  return out;
}

std::vector<Jet> truncate_field(std::span<const Jet> v, int order) {
  std::vector<Jet> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].truncated(order);
  return out;
}

JetMatrix ChartManifold::j_jets(const BasePoint& base, int order) const {
  JetMatrix out(J.size());
  for (size_t i = 0; i < J.size(); ++i) out[i] = J[i].eval_jet(base, order);
  return out;
}

Eigen::MatrixXd ChartManifold::j_value(std::span<const double> p) const {
  const int d = dim();
  Eigen::MatrixXd m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m(a, b) = J[a * d + b].eval(p);
  return m;
}

Eigen::MatrixXd ChartManifold::g0_value(std::span<const double> p) const {
  const int d = dim();
  Eigen::MatrixXd m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m(a, b) = g0[a * d + b].eval(p);
  return m;
}

MetricPtr ChartManifold::metric(const std::string& seed) const {
  if (seed == "default")
    return make_hermitianized_metric(name, dim(), g0, J);
  auto it = extra_seeds.find(seed);
  if (it == extra_seeds.end())
    fail(ErrorKind::usage, "manifold '" + name + "' has no metric seed '" + seed + "'");
  return make_hermitianized_metric(name + ":" + seed, dim(), it->second, J);
}

std::vector<double> ChartManifold::sample_point(SampleRng& rng) const {
  std::vector<double> p(dim());
  for (int a = 0; a < dim(); ++a) {
    const double u = rng.uniform();
    p[a] = domain[a].lo + (0.05 + 0.9 * u) * (domain[a].hi - domain[a].lo);
  }
  return p;
}

std::string ChartManifold::config_text() const {
  json j;
  j["name"] = name;
  j["n"] = n;
  j["coordinates"] = coords;
  auto matrix_to_json = [&](const std::vector<Expression>& m) {
    json rows = json::array();
    for (int a = 0; a < dim(); ++a) {
      json row = json::array();
      for (int b = 0; b < dim(); ++b) row.push_back(m[a * dim() + b].str());
      rows.push_back(row);
    }
    return rows;
  };
  j["J"] = matrix_to_json(J);
  j["g0"] = matrix_to_json(g0);
  json dj = json::array();
  for (const auto& iv : domain) dj.push_back(json::array({iv.lo, iv.hi}));
  j["domain"] = dj;
  return j.dump(2);
}

ChartManifold ChartManifold::from_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::parse, std::string("manifold config is not valid JSON: ") + e.what());
  }
  ChartManifold m;
  try {
    m.name = j.at("name").get<std::string>();
    m.n = j.at("n").get<int>();
    m.coords = j.at("coordinates").get<std::vector<std::string>>();
  } catch (const std::exception& e) {
    fail(ErrorKind::parse, std::string("manifold config missing field: ") + e.what());
  }
  if (m.n < 1 || m.n > 4)
    fail(ErrorKind::validation, "complex dimension must be between 1 and 4");
  if (static_cast<int>(m.coords.size()) != 2 * m.n)
    fail(ErrorKind::validation, "coordinate count must equal 2n");
  auto parse_matrix = [&](const json& rows, const char* what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != m.dim())
      fail(ErrorKind::validation, std::string(what) + " must be a 2n x 2n matrix");
    std::vector<Expression> out;
    out.reserve(m.dim() * m.dim());
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != m.dim())
        fail(ErrorKind::validation, std::string(what) + " must be a 2n x 2n matrix");
      for (const auto& cell : row)
        out.push_back(Expression::parse(cell.get<std::string>(), m.coords));
    }
    return out;
  };
  m.J = parse_matrix(j.at("J"), "J");
  m.g0 = parse_matrix(j.at("g0"), "g0");
  const auto& dj = j.at("domain");
  if (!dj.is_array() || static_cast<int>(dj.size()) != m.dim())
    fail(ErrorKind::validation, "domain must list one [lo, hi] per coordinate");
  for (const auto& iv : dj) {
    const double lo = iv.at(0).get<double>(), hi = iv.at(1).get<double>();
    if (!(lo < hi)) fail(ErrorKind::validation, "domain intervals must satisfy lo < hi");
    m.domain.push_back({lo, hi});
  }
  return m;
}

ChartManifold ChartManifold::from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::usage, "cannot open manifold config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_config_text(ss.str());
}

double check_acs(const Eigen::MatrixXd& j_at_p) {
  const Eigen::MatrixXd r =
      j_at_p * j_at_p + Eigen::MatrixXd::Identity(j_at_p.rows(), j_at_p.cols());
  return r.cwiseAbs().maxCoeff();
}

double check_acs(const ChartManifold& m, std::span<const double> p) {
  return check_acs(m.j_value(p));
}

Eigen::VectorXd nijenhuis(const JetMatrix& j_jets, std::span<const Jet> X,
                          std::span<const Jet> Y) {
  const int dim = static_cast<int>(X.size());
  const int order = std::min(X[0].order(), Y[0].order());
  if (order < 2) fail(ErrorKind::usage, "nijenhuis needs fields of order >= 2");
  auto Jv = [&](std::span<const Jet> v, int ord) {
    return matrix_apply(j_jets, v, ord);
  };
  const auto JX = Jv(X, order), JY = Jv(Y, order);
  auto b1 = field_bracket(JX, JY);                      // [JX, JY]
  auto b2 = Jv(field_bracket(JX, Y), order - 1);        // J [JX, Y]
  auto b3 = Jv(field_bracket(X, JY), order - 1);        // J [X, JY]
  auto b4 = field_bracket(X, Y);                        // [X, Y]
  Eigen::VectorXd out(dim);
  for (int a = 0; a < dim; ++a) {
    const cplx v = b1[a].value() - b2[a].value() - b3[a].value() - b4[a].value();
    if (std::abs(v.imag()) > 1e-9)
      fail(ErrorKind::internal_consistency,
           "nijenhuis of real fields produced a complex value");
    out[a] = v.real();
  }
  return out;
}

ValidationSummary validate_manifold(const ChartManifold& m, int points,
                                    uint64_t seed, bool throw_on_failure) {
  ValidationSummary s;
  s.points = points;
  s.min_g0_eigenvalue = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    SampleRng rng(seed, static_cast<uint64_t>(i));
    const auto p = m.sample_point(rng);
    const Eigen::MatrixXd Jp = m.j_value(p);
    s.max_acs_residual = std::max(s.max_acs_residual, check_acs(Jp));
    const Eigen::MatrixXd g0p = m.g0_value(p);
    s.max_g0_asymmetry =
        std::max(s.max_g0_asymmetry, (g0p - g0p.transpose()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (g0p + g0p.transpose()));
    s.min_g0_eigenvalue = std::min(s.min_g0_eigenvalue, eig.eigenvalues().minCoeff());
    const Eigen::MatrixXd g = 0.5 * (g0p + Jp.transpose() * g0p * Jp);
    s.max_j_invariance_residual = std::max(
        s.max_j_invariance_residual, (Jp.transpose() * g * Jp - g).cwiseAbs().maxCoeff());
  }
  if (throw_on_failure) {
    if (s.max_acs_residual > 1e-10)
      fail(ErrorKind::validation, "J^2 + Id residual " +
                                      std::to_string(s.max_acs_residual) +
                                      " exceeds 1e-10 on '" + m.name + "'");
    if (s.max_g0_asymmetry > 1e-10)
      fail(ErrorKind::validation, "g0 is not symmetric on '" + m.name + "'");
    if (s.min_g0_eigenvalue <= 0.0)
      fail(ErrorKind::validation, "g0 is not positive definite on '" + m.name + "'");
    if (s.max_j_invariance_residual > 1e-10)
      fail(ErrorKind::validation, "hermitianized metric is not J-invariant on '" +
                                      m.name + "'");
  }
  return s;
}

namespace {

std::vector<std::string> xy_names(int n) {
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) {
    names.push_back("x" + std::to_string(k));
    names.push_back("y" + std::to_string(k));
  }
  return names;
}

std::vector<Expression> parse_matrix(const std::vector<std::vector<std::string>>& rows,
                                     std::span<const std::string> coords) {
  std::vector<Expression> out;
  for (const auto& row : rows)
    for (const auto& cell : row) out.push_back(Expression::parse(cell, coords));
  return out;
}

std::vector<Expression> identity_matrix(int dim) {
  std::vector<Expression> out;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      out.push_back(Expression::literal(a == b ? 1.0 : 0.0));
  return out;
}

std::vector<Expression> standard_j(int n, std::span<const std::string> coords) {
  // block diagonal: J dx_k = dy_k, J dy_k = -dx_k
  std::vector<std::vector<std::string>> rows(2 * n, std::vector<std::string>(2 * n, "0"));
  for (int k = 0; k < n; ++k) {
    rows[2 * k][2 * k + 1] = "-1";
    rows[2 * k + 1][2 * k] = "1";
  }
  return parse_matrix(rows, coords);
}

ChartManifold make_flat(int n) {
  ChartManifold m;
  m.name = "flat_c" + std::to_string(n);
  m.n = n;
  m.coords = xy_names(n);
  m.J = standard_j(n, m.coords);
  m.g0 = identity_matrix(2 * n);
  m.domain.assign(2 * n, {-1.0, 1.0});
  return m;
}

ChartManifold make_kahler_exp() {
  ChartManifold m;
  m.name = "kahler_exp";
  m.n = 1;
  m.coords = xy_names(1);
  m.J = standard_j(1, m.coords);
  m.g0 = parse_matrix({{"2*exp(x1^2 + y1^2)", "0"}, {"0", "2*exp(x1^2 + y1^2)"}},
                      m.coords);
  m.domain.assign(2, {-1.2, 1.2});
  return m;
}

ChartManifold make_twisted_torus() {
  ChartManifold m;
  m.name = "twisted_torus";
  m.n = 2;
  m.coords = xy_names(2);
  // J = A J_std A^T with A the rotation by 0.3*sin(x1) in the (x1, x2)
  // plane; J^2 = -Id holds exactly, non-integrability comes from the
  // point dependence.
  const std::string c = "cos(0.3*sin(x1))", s = "sin(0.3*sin(x1))";
  m.J = parse_matrix(
      {
          {"0", "-" + c, "0", s},
          {c, "0", s, "0"},
          {"0", "-" + s, "0", "-" + c},
          {"-" + s, "0", c, "0"},
      },
      m.coords);
  m.g0 = identity_matrix(4);
  m.domain.assign(4, {-3.141592653589793, 3.141592653589793});
  m.extra_seeds["wavy"] = parse_matrix(
      {
          {"2 + 0.5*sin(x1)", "0.2*cos(y1)", "0", "0"},
          {"0.2*cos(y1)", "2 + 0.5*cos(x2)", "0", "0"},
          {"0", "0", "2 + 0.5*sin(y2)", "0.2*sin(x1)"},
          {"0", "0", "0.2*sin(x1)", "2"},
      },
      m.coords);
  return m;
}

}  // namespace

ChartManifold product_chart(const ChartManifold& a, const ChartManifold& b) {
  ChartManifold m;
  m.n = a.n + b.n;
  m.name = a.name + "_x_" + b.name;
  m.coords = xy_names(m.n);
  const int da = a.dim(), db = b.dim(), d = m.dim();

  std::vector<int> map_a(da), map_b(db);
  for (int i = 0; i < da; ++i) map_a[i] = i;
  for (int i = 0; i < db; ++i) map_b[i] = da + i;

  auto zero = Expression::literal(0.0);
  m.J.assign(d * d, zero);
  m.g0.assign(d * d, zero);
  for (int r = 0; r < da; ++r)
    for (int c = 0; c < da; ++c) {
      m.J[r * d + c] = a.J[r * da + c].remap(map_a, m.coords);
      m.g0[r * d + c] = a.g0[r * da + c].remap(map_a, m.coords);
    }
  for (int r = 0; r < db; ++r)
    for (int c = 0; c < db; ++c) {
      m.J[(da + r) * d + (da + c)] = b.J[r * db + c].remap(map_b, m.coords);
      m.g0[(da + r) * d + (da + c)] = b.g0[r * db + c].remap(map_b, m.coords);
    }
  m.domain = a.domain;
  m.domain.insert(m.domain.end(), b.domain.begin(), b.domain.end());
  return m;
}

std::vector<ChartManifold> catalog() {
  std::vector<ChartManifold> out;
  out.push_back(make_flat(1));
  out.push_back(make_flat(2));
  out.push_back(make_kahler_exp());
  out.push_back(make_twisted_torus());
  ChartManifold prod = product_chart(make_twisted_torus(), make_twisted_torus());
  prod.name = "product_tt";
  out.push_back(prod);
  return out;
}

bool has_standard_j(const ChartManifold& m) {
  Eigen::MatrixXd std_j = Eigen::MatrixXd::Zero(m.dim(), m.dim());
  for (int k = 0; k < m.n; ++k) {
    std_j(2 * k, 2 * k + 1) = -1.0;
    std_j(2 * k + 1, 2 * k) = 1.0;
  }
  for (int t = 0; t < 3; ++t) {
    SampleRng rng(99, t);
    const auto p = m.sample_point(rng);
    if ((m.j_value(p) - std_j).cwiseAbs().maxCoeff() > 1e-12) return false;
  }
  return true;
}

ChartManifold find_manifold(const std::string& name_or_path) {
  std::string key = name_or_path;
  if (key == "flat_cn") key = "flat_c2";
  if (key == "product") key = "product_tt";
  for (auto& m : catalog())
    if (m.name == key) return m;
  if (std::filesystem::exists(name_or_path))
    return ChartManifold::from_config_file(name_or_path);
  fail(ErrorKind::usage,
       "unknown manifold '" + name_or_path + "' (not a catalog name or config file)");
}

}  // namespace ah
