#include "doctest.h"

#include <cmath>

#include "ahlab/connection.hpp"

using namespace ah;

namespace {

Eigen::VectorXcd coord_values(const FrameJet& frame, const FieldInFrame& X) {
  const auto xc = to_coordinates(frame, X, 0);
  Eigen::VectorXcd v(frame.dim());
  for (int a = 0; a < frame.dim(); ++a) v[a] = xc[a].value();
  return v;
}

}  // namespace

TEST_CASE("flat metric, coordinate frame: all Christoffels vanish") {
  auto flat = find_manifold("flat_c2");
  auto base = make_base({0.3, -0.2, 0.5, 0.6});
  auto chr = canonical_connection(*flat.metric(), coordinate_10_frame(flat, base));
  for (const auto& j : chr.gamma_hol) CHECK(j.max_abs_coeff() < 1e-13);
  for (const auto& j : chr.gamma_anti) CHECK(j.max_abs_coeff() < 1e-13);
}

TEST_CASE("kahler_exp Christoffel matches the closed form z-bar") {
  auto ke = find_manifold("kahler_exp");
  // at z = 1 (x=1, y=0): Gamma_{11}^1 = z-bar = 1
  auto base = make_base({1.0, 0.0});
  auto chr = canonical_connection(*ke.metric(), coordinate_10_frame(ke, base));
  CHECK(std::abs(chr.hol(0, 0, 0).value() - cplx(1.0, 0.0)) < 1e-12);

  // at a generic point: Gamma = z-bar = x - i y
  auto b2 = make_base({0.3, -0.7});
  auto chr2 = canonical_connection(*ke.metric(), coordinate_10_frame(ke, b2));
  CHECK(std::abs(chr2.hol(0, 0, 0).value() - cplx(0.3, 0.7)) < 1e-12);

  // finite-difference cross-check of Gamma = g^{-1} dz(g11bar)
  const double h = 1e-5;
  auto gm = ke.metric();
  auto g_at = [&](double x, double y) {
    auto gj = gm->eval(make_base({x, y}), 0);
    // g(dz, dz-bar) = (g_xx + g_yy)/4 for the standard J
    return 0.25 * (gj[0].value().real() + gj[3].value().real());
  };
  const double gx = (g_at(0.3 + h, -0.7) - g_at(0.3 - h, -0.7)) / (2 * h);
  const double gy = (g_at(0.3, -0.7 + h) - g_at(0.3, -0.7 - h)) / (2 * h);
  const cplx dz_g = 0.5 * cplx(gx, -gy);
  const cplx gamma_fd = dz_g / g_at(0.3, -0.7);
  CHECK(std::abs(chr2.hol(0, 0, 0).value() - gamma_fd) < 1e-8);
}

TEST_CASE("pseudo frame reduces gamma_hol to the Lemma formula on the twisted torus") {
  auto tt = find_manifold("twisted_torus");
  auto g = tt.metric("wavy");
  SampleRng rng(81, 0);
  auto p = tt.sample_point(rng);
  auto base = make_base(p);
  auto frame = make_pseudo_holomorphic_frame(coordinate_10_frame(tt, base));
  auto chr = canonical_connection(*g, frame);
  const int n = 2;
  // at p the correction term vanishes: Gamma_{ij}^k = g^{mu-bar k} e_j(g_{i mu-bar})
  Eigen::MatrixXcd G(n, n);
  for (int l = 0; l < n; ++l)
    for (int mu = 0; mu < n; ++mu) G(l, mu) = chr.frame_metric[l * n + mu].value();
  const Eigen::MatrixXcd Ginv = G.inverse();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        cplx direct = 0.0;
        for (int mu = 0; mu < n; ++mu)
          direct += Ginv(mu, k) *
                    apply_vector_field(frame.e[j], chr.frame_metric[i * n + mu]).value();
        CHECK(std::abs(chr.hol(i, j, k).value() - direct) < 1e-9);
      }
    }
  }
}

TEST_CASE("Lemma 3.3: anti-holomorphic covariant derivative is the bracket") {
  for (const char* name : {"flat_c2", "kahler_exp", "twisted_torus"}) {
    auto m = find_manifold(name);
    auto g = m.metric();
    for (int t = 0; t < 12; ++t) {
      SampleRng rng(91, t);
      auto p = m.sample_point(rng);
      auto base = make_base(p);
      auto frame = coordinate_10_frame(m, base);
      auto chr = canonical_connection(*g, frame);
      const Eigen::MatrixXcd P = projection_10_matrix(frame.jp);
      const int n = m.n;
      // random (1,0) direction X-bar and each frame field e_i
      Eigen::VectorXcd xa(n);
      for (int i = 0; i < n; ++i) xa[i] = rng.cgaussian();
      FieldInFrame Xbar = constant_frame_field(frame, Eigen::VectorXcd::Zero(n),
                                               xa.conjugate());
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd ei = Eigen::VectorXcd::Zero(n);
        ei[i] = 1.0;
        FieldInFrame Ei = constant_frame_field(frame, ei, Eigen::VectorXcd::Zero(n));
        const Eigen::VectorXcd lhs =
            coord_values(frame, covariant_derivative(chr, Xbar, Ei));
        // direct bracket in coordinates
        auto xbar_c = to_coordinates(frame, Xbar, 3);
        const auto br = field_bracket(xbar_c, frame.e[i]);
        Eigen::VectorXcd bv(m.dim());
        for (int a = 0; a < m.dim(); ++a) bv[a] = br[a].value();
        const Eigen::VectorXcd rhs = P * bv;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("covariant derivative on kahler_exp at z=1") {
  auto ke = find_manifold("kahler_exp");
  auto base = make_base({1.0, 0.0});
  auto frame = coordinate_10_frame(ke, base);
  auto chr = canonical_connection(*ke.metric(), frame);
  Eigen::VectorXcd one(1), zero(1);
  one << 1.0;
  zero << 0.0;
  auto E = constant_frame_field(frame, one, zero);
  auto cov = covariant_derivative(chr, E, E);
  // nabla_{dz} dz = z-bar dz = 1 * dz at z = 1
  CHECK(std::abs(cov.a[0].value() - cplx(1.0)) < 1e-12);
  CHECK(std::abs(cov.b[0].value()) < 1e-14);
}

TEST_CASE("torsion: antisymmetry, (1,1) vanishing, and the twisted (2,0) part") {
  auto tt = find_manifold("twisted_torus");
  auto g = tt.metric();
  auto base = make_base({0.7, 0.3, -0.4, 0.5});
  auto frame = coordinate_10_frame(tt, base);
  auto chr = canonical_connection(*g, frame);
  const int n = 2;
  SampleRng rng(101, 3);

  double max11 = 0.0;
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXcd xa(n), yb(n);
    for (int i = 0; i < n; ++i) {
      xa[i] = rng.cgaussian();
      yb[i] = rng.cgaussian();
    }
    auto X = constant_frame_field(frame, xa, Eigen::VectorXcd::Zero(n));
    auto Ybar = constant_frame_field(frame, Eigen::VectorXcd::Zero(n), yb);
    const auto tau = torsion(chr, X, Ybar);
    max11 = std::max(max11, tau.total().cwiseAbs().maxCoeff());
    // antisymmetry
    const auto tau_rev = torsion(chr, Ybar, X);
    CHECK((tau.total() + tau_rev.total()).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(max11 < 1e-9);

  // the (2,0)-torsion is genuinely nonzero at the probe point
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(n), e1 = Eigen::VectorXcd::Zero(n);
  e0[0] = 1.0;
  e1[1] = 1.0;
  auto X0 = constant_frame_field(frame, e0, Eigen::VectorXcd::Zero(n));
  auto X1 = constant_frame_field(frame, e1, Eigen::VectorXcd::Zero(n));
  const auto tau20 = torsion(chr, X0, X1);
  CHECK(tau20.total().cwiseAbs().maxCoeff() > 1e-4);
}

TEST_CASE("kahler_exp torsion vanishes entirely") {
  auto ke = find_manifold("kahler_exp");
  auto base = make_base({0.4, 0.3});
  auto frame = coordinate_10_frame(ke, base);
  auto chr = canonical_connection(*ke.metric(), frame);
  SampleRng rng(111, 0);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXcd xa(1), xb(1), ya(1), yb(1);
    xa[0] = rng.cgaussian();
    xb[0] = rng.cgaussian();
    ya[0] = rng.cgaussian();
    yb[0] = rng.cgaussian();
    auto X = constant_frame_field(frame, xa, xb);
    auto Y = constant_frame_field(frame, ya, yb);
    CHECK(torsion(chr, X, Y).total().cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("axioms residuals on the catalog") {
  SUBCASE("flat is exact") {
    auto flat = find_manifold("flat_c2");
    SampleRng rng(121, 0);
    auto p = flat.sample_point(rng);
    const auto res = verify_axioms(flat, flat.metric(), p, 5);
    CHECK(res.max() <= 1e-12);
  }
  SUBCASE("kahler_exp under 1e-9 at 10 points") {
    auto ke = find_manifold("kahler_exp");
    for (int i = 0; i < 10; ++i) {
      SampleRng rng(131, i);
      auto p = ke.sample_point(rng);
      CHECK(verify_axioms(ke, ke.metric(), p, 10).max() < 1e-9);
    }
  }
  SUBCASE("twisted torus with the wavy metric under 1e-8 at 10 points") {
    auto tt = find_manifold("twisted_torus");
    auto g = tt.metric("wavy");
    for (int i = 0; i < 10; ++i) {
      SampleRng rng(141, i);
      auto p = tt.sample_point(rng);
      CHECK(verify_axioms(tt, g, p, 10).max() < 1e-8);
    }
  }
}

TEST_CASE("axioms oracle: uniqueness and agreement") {
  SUBCASE("flat returns zeros") {
    auto flat = find_manifold("flat_c1");
    const std::vector<double> p = {0.1, -0.4};
    const auto r = connection_by_axioms_oracle(flat, flat.metric(), p);
    CHECK(r.rank == r.unknowns);
    CHECK(r.match_residual < 1e-12);
  }
  SUBCASE("kahler_exp at z=0.5 matches the closed form") {
    auto ke = find_manifold("kahler_exp");
    const std::vector<double> p = {0.5, 0.0};
    const auto r = connection_by_axioms_oracle(ke, ke.metric(), p);
    CHECK(r.rank == r.unknowns);
    CHECK(r.match_residual < 1e-8);
  }
  SUBCASE("twisted torus at 10 seeded points") {
    auto tt = find_manifold("twisted_torus");
    auto g = tt.metric("wavy");
    for (int i = 0; i < 10; ++i) {
      SampleRng rng(151, i);
      auto p = tt.sample_point(rng);
      const auto r = connection_by_axioms_oracle(tt, g, p);
      CHECK(r.rank == r.unknowns);
      CHECK(r.match_residual < 1e-8);
    }
  }
}

TEST_CASE("normal frames: dg vanishes at p") {
  SUBCASE("flat: coordinate frame is already normal") {
    auto flat = find_manifold("flat_c2");
    auto base = make_base({0.2, 0.1, -0.5, 0.3});
    auto g = flat.metric();
    auto f = make_normal_frame(*g, coordinate_10_frame(flat, base), FrameKind::pseudo);
    CHECK(normal_residual(*g, f) < 1e-13);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Jet expect = Jet::constant(4, 3, base, i == j ? 1.0 : 0.0);
        CHECK((f.trans[i][j] - expect).max_abs_coeff() < 1e-13);
      }
  }
  SUBCASE("kahler_exp at z=0.5") {
    auto ke = find_manifold("kahler_exp");
    auto base = make_base({0.5, 0.0});
    auto g = ke.metric();
    auto f = make_normal_frame(*g, coordinate_10_frame(ke, base), FrameKind::pseudo);
    CHECK(normal_residual(*g, f) < 1e-9);
    CHECK(pseudo_residual(f, f.jp) < 1e-9);
  }
  SUBCASE("twisted torus quasi-normal: dg and double bracket simultaneously") {
    auto tt = find_manifold("twisted_torus");
    auto g = tt.metric("wavy");
    for (int i = 0; i < 5; ++i) {
      SampleRng rng(161, i);
      auto p = tt.sample_point(rng);
      auto f = make_normal_frame(*g, coordinate_10_frame(tt, make_base(p)),
                                 FrameKind::quasi);
      CHECK(normal_residual(*g, f) < 1e-8);
      CHECK(pseudo_residual(f, f.jp) < 1e-9);
      CHECK(quasi_residual(f, f.jp) < 1e-8);
    }
  }
}
