#include "ahlab/cli.hpp"

#include <chrono>
#include <fstream>

#include "CLI11.hpp"
#include "ahlab/product.hpp"
#include "ahlab/report.hpp"

namespace ah::cli {

namespace {

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

struct Options {
  std::string manifold = "twisted_torus";
  int points = 20;
  int samples = 200;
  uint64_t seed = 7;
  int order = 3;
  double tol_scale = 1.0;
  std::string out_path;

  std::string g_spec, h_spec;       // wu
  double alpha_scale = 0.5;         // augment
  std::string a_text = "0.3";       // product
  std::string factor1 = "flat_c1";
  std::string factor2 = "flat_c1";
};

// "name[:seed]" -> (chart, metric); flat_c* specs adapt to the host chart
struct MetricSpec {
  std::string name, seed = "default";
};

MetricSpec parse_metric_spec(const std::string& text) {
  MetricSpec s;
  const auto pos = text.find(':');
  s.name = text.substr(0, pos);
  if (pos != std::string::npos) s.seed = text.substr(pos + 1);
  return s;
}

Eigen::MatrixXcd parse_matrix_arg(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::stringstream rs(row);
    std::string cell;
    rows.emplace_back();
    while (std::getline(rs, cell, ',')) rows.back().push_back(std::stod(cell));
  }
  if (rows.empty() || rows[0].empty())
    fail(ErrorKind::usage, "empty coefficient matrix");
  Eigen::MatrixXcd a(rows.size(), rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size())
      fail(ErrorKind::usage, "ragged coefficient matrix");
    for (size_t c = 0; c < rows[r].size(); ++c) a(r, c) = rows[r][c];
  }
  return a;
}

void push_check(Report& rep, std::ostream& err, std::string name, int samples,
                std::optional<double> max_residual, std::optional<double> min_margin,
                double threshold, bool pass, double elapsed) {
  CheckRecord c;
  c.name = std::move(name);
  c.samples = samples;
  c.max_residual = max_residual;
  c.min_margin = min_margin;
  c.threshold = threshold;
  c.pass = pass;
  c.elapsed_ms = elapsed;
  err << (pass ? "[PASS] " : "[FAIL] ") << c.name;
  if (max_residual) err << "  max_residual=" << *max_residual;
  if (min_margin) err << "  min_margin=" << *min_margin;
  err << "  (threshold " << threshold << ", " << samples << " samples)\n";
  rep.checks.push_back(std::move(c));
}

void run_verify_axioms(const Options& opt, Report& rep, std::ostream& err) {
  const ChartManifold m = find_manifold(opt.manifold);
  validate_manifold(m, 50, opt.seed);
  const MetricPtr g = m.metric();
  double worst_metric = 0.0, worst_j = 0.0, worst_tau = 0.0;
  Timer t;
  for (int i = 0; i < opt.points; ++i) {
    SampleRng rng(opt.seed, static_cast<uint64_t>(i));
    const auto p = m.sample_point(rng);
    const auto res = verify_axioms(m, g, p, opt.seed);
    worst_metric = std::max(worst_metric, res.metric_compat);
    worst_j = std::max(worst_j, res.j_compat);
    worst_tau = std::max(worst_tau, res.torsion11);
  }
  const double tol = 1e-8 * opt.tol_scale;
  const double el = t.ms() / 3;
  push_check(rep, err, "axioms-metric-compatibility", opt.points, worst_metric,
             std::nullopt, tol, worst_metric < tol, el);
  push_check(rep, err, "axioms-j-compatibility", opt.points, worst_j, std::nullopt,
             tol, worst_j < tol, el);
  push_check(rep, err, "axioms-torsion-11", opt.points, worst_tau, std::nullopt,
             tol, worst_tau < tol, el);

  Timer t2;
  const int oracle_points = std::min(opt.points, 10);
  double worst_oracle = 0.0;
  bool full_rank = true;
  for (int i = 0; i < oracle_points; ++i) {
    SampleRng rng(opt.seed, static_cast<uint64_t>(i));
    const auto p = m.sample_point(rng);
    const auto r = connection_by_axioms_oracle(m, g, p);
    worst_oracle = std::max(worst_oracle, r.match_residual);
    full_rank = full_rank && (r.rank == r.unknowns);
  }
  push_check(rep, err, "uniqueness-oracle", oracle_points, worst_oracle,
             std::nullopt, tol, full_rank && worst_oracle < tol, t2.ms());
}

void run_frames(const Options& opt, Report& rep, std::ostream& err) {
  const ChartManifold m = find_manifold(opt.manifold);
  const MetricPtr g = m.metric();
  double w_pseudo = 0.0, w_quasi = 0.0, w_ndg_p = 0.0, w_ndg_q = 0.0;
  Timer t;
  for (int i = 0; i < opt.points; ++i) {
    SampleRng rng(opt.seed, static_cast<uint64_t>(i));
    const auto base = make_base(m.sample_point(rng));
    const FrameJet coord = coordinate_10_frame(m, base, opt.order);
    const FrameJet pseudo = make_pseudo_holomorphic_frame(coord);
    w_pseudo = std::max(w_pseudo, pseudo_residual(pseudo, pseudo.jp));
    const FrameJet quasi = make_quasi_holomorphic_frame(pseudo);
    w_quasi = std::max(w_quasi, quasi_residual(quasi, quasi.jp));
    const FrameJet np = make_normal_frame(*g, coord, FrameKind::pseudo);
    w_ndg_p = std::max(w_ndg_p, normal_residual(*g, np));
    const FrameJet nq = make_normal_frame(*g, coord, FrameKind::quasi);
    w_ndg_q = std::max(w_ndg_q, std::max(normal_residual(*g, nq),
                                         quasi_residual(nq, nq.jp)));
  }
  const double el = t.ms() / 4;
  push_check(rep, err, "frames-pseudo-bracket", opt.points, w_pseudo, std::nullopt,
             1e-9 * opt.tol_scale, w_pseudo < 1e-9 * opt.tol_scale, el);
  push_check(rep, err, "frames-quasi-double-bracket", opt.points, w_quasi,
             std::nullopt, 1e-8 * opt.tol_scale, w_quasi < 1e-8 * opt.tol_scale, el);
  push_check(rep, err, "frames-normal-pseudo-dg", opt.points, w_ndg_p, std::nullopt,
             1e-8 * opt.tol_scale, w_ndg_p < 1e-8 * opt.tol_scale, el);
  push_check(rep, err, "frames-normal-quasi-dg", opt.points, w_ndg_q, std::nullopt,
             1e-8 * opt.tol_scale, w_ndg_q < 1e-8 * opt.tol_scale, el);
}

void run_curvature_compare(const Options& opt, Report& rep, std::ostream& err) {
  const ChartManifold m = find_manifold(opt.manifold);
  const MetricPtr g =
      (m.name == "twisted_torus") ? m.metric("wavy") : m.metric();
  double w_rel = 0.0, w_lemma = 0.0, w_herm = 0.0, w_normal = 0.0;
  Timer t;
  for (int i = 0; i < opt.points; ++i) {
    SampleRng rng(opt.seed, static_cast<uint64_t>(i));
    const auto base = make_base(m.sample_point(rng));
    const auto q = curvature_quasi_formula(m, *g, base);
    const FrameJet coordf = coordinate_10_frame(m, base);
    const auto dn = curvature_from_definition(*g, coordf);
    const auto qc = change_frame(q.R, coordf.value_matrix());
    double scale = 0.0, diff = 0.0;
    for (size_t u = 0; u < qc.R.size(); ++u) {
      scale = std::max(scale, std::abs(dn.R[u]));
      diff = std::max(diff, std::abs(qc.R[u] - dn.R[u]));
    }
    w_rel = std::max(w_rel, diff / std::max(scale, 1e-3));
    w_lemma = std::max(w_lemma, q.second_derivative_residual);
    w_herm = std::max(w_herm, std::max(q.R.hermitian_symmetry_residual(),
                                       dn.hermitian_symmetry_residual()));
    const auto qn = curvature_quasi_formula(m, *g, base, QuasiMode::normal);
    w_normal = std::max(w_normal, qn.normal_consistency_residual);
  }
  push_check(rep, err, "curvature-cross-method-relative", opt.points, w_rel,
             std::nullopt, 1e-6 * opt.tol_scale, w_rel < 1e-6 * opt.tol_scale,
             t.ms());
  push_check(rep, err, "curvature-lemma-second-derivative", opt.points, w_lemma,
             std::nullopt, 1e-8 * opt.tol_scale, w_lemma < 1e-8 * opt.tol_scale, 0);
  push_check(rep, err, "curvature-hermitian-symmetry", opt.points, w_herm,
             std::nullopt, 1e-8 * opt.tol_scale, w_herm < 1e-8 * opt.tol_scale, 0);
  push_check(rep, err, "curvature-normal-mode-consistency", opt.points, w_normal,
             std::nullopt, 1e-8 * opt.tol_scale, w_normal < 1e-8 * opt.tol_scale, 0);
}

nlohmann::json rows_to_json(const InequalityReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : r.rows) {
    nlohmann::json j;
    j["index"] = s.index;
    j["point"] = s.point;
    j["lhs"] = s.lhs;
    j["rhs"] = s.rhs;
    j["margin"] = s.margin;
    j["discarded"] = s.discarded;
    rows.push_back(std::move(j));
  }
  return rows;
}

void run_wu(const Options& opt, Report& rep, std::ostream& err) {
  if (opt.g_spec.empty() || opt.h_spec.empty())
    fail(ErrorKind::usage, "wu needs --g and --h metric specs");
  const MetricSpec gs = parse_metric_spec(opt.g_spec);
  const MetricSpec hs = parse_metric_spec(opt.h_spec);
  const ChartManifold host = find_manifold(hs.name);
  rep.manifold_id = host.name;
  const MetricPtr h = host.metric(hs.seed);
  MetricPtr g;
  if (gs.name.rfind("flat_c", 0) == 0 && gs.name != hs.name) {
    // a flat metric adapts to the host chart
    std::vector<Expression> identity;
    for (int a = 0; a < host.dim(); ++a)
      for (int b = 0; b < host.dim(); ++b)
        identity.push_back(Expression::literal(a == b ? 1.0 : 0.0));
    g = make_hermitianized_metric("flat", host.dim(), identity, host.J);
  } else {
    const ChartManifold gm = find_manifold(gs.name);
    if (gm.n != host.n)
      fail(ErrorKind::validation, "wu metrics live on charts of different dimension");
    for (int t = 0; t < 5; ++t) {
      SampleRng rng(opt.seed, static_cast<uint64_t>(t));
      const auto p = host.sample_point(rng);
      if ((gm.j_value(p) - host.j_value(p)).cwiseAbs().maxCoeff() > 1e-10)
        fail(ErrorKind::validation, "wu metrics disagree on the almost complex structure");
    }
    g = gm.metric(gs.seed);
  }

  Timer t;
  const InequalityReport r = wu_report(host, g, h, opt.samples, opt.seed);
  const double el = t.ms();
  const double tol = 1e-9 * opt.tol_scale;
  push_check(rep, err, "wu-min-margin", r.samples, std::nullopt, r.min_margin, tol,
             r.min_margin >= -tol, el);
  push_check(rep, err, "wu-discarded-nonpositive", r.samples, r.max_discarded,
             std::nullopt, 1e-12, r.max_discarded <= 1e-12, 0);
  push_check(rep, err, "wu-identity-residual", r.samples, r.max_identity_residual,
             std::nullopt, 1e-10, r.max_identity_residual < 1e-10, 0);
  rep.checks.back().detail["g"] = r.g_id;
  rep.checks.back().detail["h"] = r.h_id;
  rep.checks.back().detail["samples"] = rows_to_json(r);
}

void run_augment(const Options& opt, Report& rep, std::ostream& err) {
  const ChartManifold m = find_manifold(opt.manifold);
  if (!has_standard_j(m))
    fail(ErrorKind::usage,
         "augment uses alpha = c dz_1 and needs a chart with the standard J");
  const MetricPtr g = m.metric();
  const OneFormExpr alpha = dz_form(m, 0).scaled(opt.alpha_scale);

  Timer t0;
  double w_hol = 0.0;
  for (int i = 0; i < std::min(opt.points, 20); ++i) {
    SampleRng rng(opt.seed, static_cast<uint64_t>(i));
    const auto base = make_base(m.sample_point(rng));
    FormJets aj = alpha.eval(base, 3);
    aj.r = 1;
    aj.s = 0;
    const auto frame = make_pseudo_holomorphic_frame(coordinate_10_frame(m, base));
    w_hol = std::max(w_hol, is_holomorphic_at(aj, frame).residual_coefficient);
  }
  push_check(rep, err, "augment-alpha-holomorphic", std::min(opt.points, 20), w_hol,
             std::nullopt, 1e-8, w_hol < 1e-8, t0.ms());

  const MetricPtr h = augment_metric(m, g, alpha);
  Timer t;
  const InequalityReport r = augment_report(m, g, h, opt.samples, opt.seed);
  const double tol = 1e-9 * opt.tol_scale;
  push_check(rep, err, "augment-min-margin", r.samples, std::nullopt, r.min_margin,
             tol, r.min_margin >= -tol, t.ms());
  rep.checks.back().detail["alpha_scale"] = opt.alpha_scale;
  rep.checks.back().detail["samples"] = rows_to_json(r);
}

void run_product(const Options& opt, Report& rep, std::ostream& err) {
  const ChartManifold f1 = find_manifold(opt.factor1);
  const ChartManifold f2 = find_manifold(opt.factor2);
  if (!has_standard_j(f1) || !has_standard_j(f2))
    fail(ErrorKind::usage,
         "product uses dz bases and needs factors with the standard J");
  const Eigen::MatrixXcd a = parse_matrix_arg(opt.a_text);
  if (a.rows() != f1.n || a.cols() != f2.n)
    fail(ErrorKind::usage, "coefficient matrix must be n1 x n2 for the dz bases");
  std::vector<OneFormExpr> phi, psi;
  for (int k = 0; k < f1.n; ++k) phi.push_back(dz_form(f1, k));
  for (int k = 0; k < f2.n; ++k) psi.push_back(dz_form(f2, k));

  Timer t0;
  const ProductMetric pm = product_metric(f1, f2, a, phi, psi, 50, opt.seed);
  rep.manifold_id = pm.chart.name;
  push_check(rep, err, "product-positivity", 50, 0.0, std::nullopt, 0.0, true,
             t0.ms());

  Timer t1;
  double worst_b = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.samples; ++s) {
    SampleRng rng(opt.seed, static_cast<uint64_t>(s));
    const auto base = make_base(pm.chart.sample_point(rng));
    const auto q = curvature_quasi_formula(pm.chart, *pm.h, base);
    Eigen::VectorXcd X(pm.chart.n), Y(pm.chart.n);
    for (int u = 0; u < pm.chart.n; ++u) {
      X[u] = rng.cgaussian();
      Y[u] = rng.cgaussian();
    }
    worst_b = std::max(worst_b, bisectional(q.R, X, Y));
  }
  const double tol = 1e-9 * opt.tol_scale;
  push_check(rep, err, "product-bisectional-nonpositive", opt.samples, worst_b,
             std::nullopt, tol, worst_b <= tol, t1.ms());

  Timer t2;
  const auto rr = decompose_product_form(
      [&](const BasePoint& b, int o) { return pm.rho(b, o); }, pm.phi, pm.psi,
      ProductFormKind::mixed, pm.chart, 25, opt.seed);
  double w_a = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) w_a = std::max(w_a, std::abs(rr.a(r, c) - a(r, c)));
  const double round_trip = std::max(w_a, rr.residual);
  push_check(rep, err, "product-decompose-round-trip", 25, round_trip, std::nullopt,
             1e-9 * opt.tol_scale, round_trip < 1e-9 * opt.tol_scale, t2.ms());
}

void run_forms(const Options& opt, Report& rep, std::ostream& err) {
  const ChartManifold m = find_manifold(opt.manifold);
  Timer t;
  double w_cartan = 0.0, w_type = 0.0, w_routes = 0.0;
  for (int i = 0; i < opt.points; ++i) {
    SampleRng rng(opt.seed, static_cast<uint64_t>(i));
    const auto base = make_base(m.sample_point(rng));
    const FormJets alpha = random_10_form(m, base, opt.order, rng);
    const auto xbar = random_01_field(m, base, opt.order, rng);
    const FrameJet coord = coordinate_10_frame(m, base, opt.order);
    const Eigen::MatrixXcd U = coord.full_value_matrix();

    const FormValue lhs =
        project_type(lie_derivative_cartan(alpha, xbar).value(), U, 1, 0);
    const FormValue db = dbar(alpha, U);
    Eigen::VectorXcd xv(m.dim());
    for (int a = 0; a < m.dim(); ++a) xv[a] = xbar[a].value();
    w_cartan = std::max(w_cartan, (lhs - interior(db, xv)).max_abs());
    w_type = std::max(w_type, type_residual(db, U, 1, 1));

    const FrameJet pseudo = make_pseudo_holomorphic_frame(coord);
    w_routes = std::max(w_routes,
                        is_holomorphic_at(alpha, pseudo).route_disagreement);
  }
  const double el = t.ms() / 3;
  push_check(rep, err, "forms-cartan-identity", opt.points, w_cartan, std::nullopt,
             1e-8 * opt.tol_scale, w_cartan < 1e-8 * opt.tol_scale, el);
  push_check(rep, err, "forms-dbar-type-purity", opt.points, w_type, std::nullopt,
             1e-10 * opt.tol_scale, w_type < 1e-10 * opt.tol_scale, el);
  push_check(rep, err, "forms-holomorphy-route-agreement", opt.points, w_routes,
             std::nullopt, 1e-8 * opt.tol_scale, w_routes < 1e-8 * opt.tol_scale, el);

  if (has_standard_j(m)) {
    Timer t2;
    double w_dz = 0.0;
    for (int i = 0; i < std::min(opt.points, 10); ++i) {
      SampleRng rng(opt.seed, 1000 + static_cast<uint64_t>(i));
      const auto base = make_base(m.sample_point(rng));
      const auto pseudo =
          make_pseudo_holomorphic_frame(coordinate_10_frame(m, base, opt.order));
      for (int k = 0; k < m.n; ++k) {
        FormJets aj = dz_form(m, k).eval(base, opt.order);
        aj.r = 1;
        aj.s = 0;
        w_dz = std::max(w_dz, is_holomorphic_at(aj, pseudo).residual_coefficient);
      }
    }
    push_check(rep, err, "forms-dz-holomorphic", std::min(opt.points, 10) * m.n,
               w_dz, std::nullopt, 1e-10 * opt.tol_scale,
               w_dz < 1e-10 * opt.tol_scale, t2.ms());
  }
}

void run_catalog(Report& rep, std::ostream& err) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& m : catalog()) {
    nlohmann::json e;
    e["name"] = m.name;
    e["n"] = m.n;
    e["coordinates"] = m.coords;
    nlohmann::json dom = nlohmann::json::array();
    for (const auto& iv : m.domain) dom.push_back(nlohmann::json::array({iv.lo, iv.hi}));
    e["domain"] = dom;
    nlohmann::json seeds = nlohmann::json::array();
    seeds.push_back("default");
    for (const auto& [k, v] : m.extra_seeds) seeds.push_back(k);
    e["metric_seeds"] = seeds;
    entries.push_back(std::move(e));
  }
  CheckRecord c;
  c.name = "catalog";
  c.samples = static_cast<int>(entries.size());
  c.pass = true;
  c.detail["manifolds"] = std::move(entries);
  c.detail["aliases"] = {{"flat_cn", "flat_c2"}, {"product", "product_tt"}};
  err << "[PASS] catalog (" << c.samples << " manifolds)\n";
  rep.checks.push_back(std::move(c));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{"ahlab: canonical connection and curvature checks for almost "
               "Hermitian manifolds"};
  app.fallthrough();
  app.add_option("--manifold", opt.manifold, "catalog name or config path");
  app.add_option("--points", opt.points, "sample points per check");
  app.add_option("--samples", opt.samples, "Monte Carlo samples");
  app.add_option("--seed", opt.seed, "RNG seed");
  app.add_option("--order", opt.order, "jet order (default 3)");
  app.add_option("--tol-scale", opt.tol_scale, "tolerance multiplier");
  app.add_option("--out", opt.out_path, "write the JSON report to this path");

  auto* cmd_catalog = app.add_subcommand("catalog", "list built-in manifolds");
  auto* cmd_verify = app.add_subcommand("verify", "verification suites");
  auto* cmd_axioms =
      cmd_verify->add_subcommand("axioms", "canonical-connection axioms + oracle");
  auto* cmd_frames = app.add_subcommand("frames", "frame-construction residuals");
  auto* cmd_curv = app.add_subcommand("curvature", "curvature suites");
  auto* cmd_compare =
      cmd_curv->add_subcommand("compare", "formula vs definition cross-check");
  auto* cmd_wu = app.add_subcommand("wu", "sum-metric curvature inequality");
  cmd_wu->set_help_flag("--help", "print help");  // frees -h for the metric flag
  cmd_wu->add_option("--g", opt.g_spec, "first metric: manifold[:seed]");
  cmd_wu->add_option("--h", opt.h_spec, "second metric: manifold[:seed]");
  auto* cmd_augment =
      app.add_subcommand("augment", "rank-one augmented metric inequality");
  cmd_augment->add_option("--scale", opt.alpha_scale, "alpha = scale * dz_1");
  auto* cmd_product = app.add_subcommand("product", "product-metric checks");
  cmd_product->add_option("--a", opt.a_text, "mixing matrix, rows ';' cols ','");
  cmd_product->add_option("--factor1", opt.factor1, "first factor manifold");
  cmd_product->add_option("--factor2", opt.factor2, "second factor manifold");
  auto* cmd_forms = app.add_subcommand("forms", "dbar and holomorphy checks");
  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("ahlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (opt.order < 3 || opt.order > 5) {
    err << "error: --order must be between 3 and 5\n";
    return 2;
  }

  Report rep;
  rep.version = kToolVersion;
  rep.manifold_id = opt.manifold;
  rep.seed = opt.seed;
  rep.jet_order = opt.order;

  try {
    if (cmd_catalog->parsed()) {
      rep.manifold_id = "catalog";
      run_catalog(rep, err);
    } else if (cmd_verify->parsed() && cmd_axioms->parsed()) {
      run_verify_axioms(opt, rep, err);
    } else if (cmd_frames->parsed()) {
      run_frames(opt, rep, err);
    } else if (cmd_curv->parsed() && cmd_compare->parsed()) {
      run_curvature_compare(opt, rep, err);
    } else if (cmd_wu->parsed()) {
      run_wu(opt, rep, err);
    } else if (cmd_augment->parsed()) {
      run_augment(opt, rep, err);
    } else if (cmd_product->parsed()) {
      run_product(opt, rep, err);
    } else if (cmd_forms->parsed()) {
      run_forms(opt, rep, err);
    } else {
      err << "error: missing subcommand\n";
      return 2;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::uniqueness_violation:
      case ErrorKind::internal_consistency:
        return 1;
      default:
        return 2;
    }
  }

  const nlohmann::json j = to_json(rep);
  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path);
    if (!f) {
      err << "error: cannot write report to '" << opt.out_path << "'\n";
      return 2;
    }
    f << j.dump(2) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return rep.overall() ? 0 : 1;
}

}  // namespace ah::cli
