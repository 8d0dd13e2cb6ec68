#include "doctest.h"

#include <cmath>

#include "ahlab/forms.hpp"

using namespace ah;

TEST_CASE("dbar of constant dz on flat C vanishes") {
  auto flat = find_manifold("flat_c1");
  auto base = make_base({0.2, -0.4});
  auto alpha = dz_form(flat, 0).eval(base, 3);
  alpha.r = 1;
  alpha.s = 0;
  auto frame = coordinate_10_frame(flat, base);
  CHECK(dbar(alpha, frame.full_value_matrix()).max_abs() < 1e-15);
}

TEST_CASE("dbar of z-bar dz on flat C is dz-bar wedge dz") {
  auto flat = find_manifold("flat_c1");
  auto base = make_base({0.3, 0.5});
  // z-bar dz has coordinate coefficients (x - i y, i x + y)
  std::vector<Jet> comp(2);
  const Jet x = Jet::coordinate(2, 3, base, 0), y = Jet::coordinate(2, 3, base, 1);
  comp[0] = x - y * cplx(0, 1.0);
  comp[1] = (x - y * cplx(0, 1.0)) * cplx(0, 1.0);
  auto alpha = form_from_jets(1, std::move(comp), 1, 0);
  auto frame = coordinate_10_frame(flat, base);
  const FormValue db = dbar(alpha, frame.full_value_matrix());
  // dz-bar wedge dz = (dx - i dy) wedge ... : in coordinates
  // d(alpha) = d(z-bar) wedge dz = (dx - i dy) wedge (dx + i dy) = 2i dx wedge dy
  CHECK(std::abs(db.comp[0] - cplx(0.0, 2.0)) < 1e-14);
  // and it already has pure type (1,1): the projection changed nothing
  const FormJets d_full = exterior_d(alpha);
  CHECK((db - d_full.value()).max_abs() < 1e-14);
}

TEST_CASE("dbar output has pure type (r, s+1)") {
  auto tt = find_manifold("twisted_torus");
  for (int t = 0; t < 20; ++t) {
    SampleRng rng(171, t);
    auto p = tt.sample_point(rng);
    auto base = make_base(p);
    auto alpha = random_10_form(tt, base, 3, rng);
    auto frame = coordinate_10_frame(tt, base);
    const Eigen::MatrixXcd U = frame.full_value_matrix();
    const FormValue db = dbar(alpha, U);
    CHECK(type_residual(db, U, 1, 1) < 1e-10);
  }
}

TEST_CASE("Lemma: (L_{X-bar} alpha)^{(r,0)} = i_{X-bar} dbar alpha") {
  for (const char* name : {"flat_c2", "kahler_exp", "twisted_torus"}) {
    auto m = find_manifold(name);
    for (int t = 0; t < 34; ++t) {
      SampleRng rng(181, 100 * t + 7);
      auto p = m.sample_point(rng);
      auto base = make_base(p);
      auto alpha = random_10_form(m, base, 3, rng);
      auto xbar = random_01_field(m, base, 3, rng);
      auto frame = coordinate_10_frame(m, base);
      const Eigen::MatrixXcd U = frame.full_value_matrix();

      const FormJets lie = lie_derivative_cartan(alpha, xbar);
      const FormValue lhs = project_type(lie.value(), U, 1, 0);

      const FormValue db = dbar(alpha, U);
      Eigen::VectorXcd xv(m.dim());
      for (int a = 0; a < m.dim(); ++a) xv[a] = xbar[a].value();
      const FormValue rhs = interior(db, xv);
      CHECK((lhs - rhs).max_abs() < 1e-8);
    }
  }
}

TEST_CASE("Lemma holds for (2,0)-forms on the twisted torus") {
  auto tt = find_manifold("twisted_torus");
  for (int t = 0; t < 10; ++t) {
    SampleRng rng(191, t);
    auto p = tt.sample_point(rng);
    auto base = make_base(p);
    auto a1 = random_10_form(tt, base, 3, rng);
    auto a2 = random_10_form(tt, base, 3, rng);
    FormJets alpha = wedge(a1, a2);
    CHECK(alpha.r == 2);
    CHECK(alpha.s == 0);
    auto xbar = random_01_field(tt, base, 3, rng);
    auto frame = coordinate_10_frame(tt, base);
    const Eigen::MatrixXcd U = frame.full_value_matrix();
    const FormValue lhs = project_type(lie_derivative_cartan(alpha, xbar).value(), U, 2, 0);
    Eigen::VectorXcd xv(tt.dim());
    for (int a = 0; a < tt.dim(); ++a) xv[a] = xbar[a].value();
    const FormValue rhs = interior(dbar(alpha, U), xv);
    CHECK((lhs - rhs).max_abs() < 1e-8);
  }
}

TEST_CASE("holomorphy: dz is holomorphic on flat charts, z-bar dz is not") {
  auto flat = find_manifold("flat_c1");
  auto base = make_base({0.25, -0.15});
  auto frame = make_pseudo_holomorphic_frame(coordinate_10_frame(flat, base));

  auto good = dz_form(flat, 0).eval(base, 3);
  good.r = 1;
  good.s = 0;
  const auto rep = is_holomorphic_at(good, frame);
  CHECK(rep.holomorphic);
  CHECK(rep.residual_coefficient < 1e-12);
  CHECK(rep.route_disagreement < 1e-12);

  std::vector<Jet> comp(2);
  const Jet x = Jet::coordinate(2, 3, base, 0), y = Jet::coordinate(2, 3, base, 1);
  comp[0] = x - y * cplx(0, 1.0);
  comp[1] = (x - y * cplx(0, 1.0)) * cplx(0, 1.0);
  auto bad = form_from_jets(1, std::move(comp), 1, 0);
  const auto rep2 = is_holomorphic_at(bad, frame);
  CHECK_FALSE(rep2.holomorphic);
  CHECK(rep2.residual_coefficient > 0.5);
  CHECK(rep2.route_disagreement < 1e-10);
}

TEST_CASE("holomorphy dual routes agree on 100 seeded random forms") {
  int done = 0;
  for (const char* name : {"flat_c2", "kahler_exp", "twisted_torus"}) {
    auto m = find_manifold(name);
    for (int t = 0; t < 34 && done < 100; ++t, ++done) {
      SampleRng rng(201, done);
      auto p = m.sample_point(rng);
      auto base = make_base(p);
      auto alpha = random_10_form(m, base, 3, rng);
      auto frame = make_pseudo_holomorphic_frame(coordinate_10_frame(m, base));
      const auto rep = is_holomorphic_at(alpha, frame);
      CHECK(rep.route_disagreement < 1e-8);
    }
  }
  CHECK(done == 100);
}

TEST_CASE("dz_k are holomorphic on integrable catalog manifolds") {
  for (const char* name : {"flat_c1", "flat_c2", "kahler_exp"}) {
    auto m = find_manifold(name);
    SampleRng rng(211, 1);
    auto p = m.sample_point(rng);
    auto base = make_base(p);
    auto frame = make_pseudo_holomorphic_frame(coordinate_10_frame(m, base));
    for (int k = 0; k < m.n; ++k) {
      auto alpha = dz_form(m, k).eval(base, 3);
      alpha.r = 1;
      alpha.s = 0;
      const auto rep = is_holomorphic_at(alpha, frame);
      CHECK(rep.holomorphic);
      CHECK(rep.residual_coefficient < 1e-10);
    }
  }
}

TEST_CASE("fundamental form: flat values and twisted type") {
  auto flat = find_manifold("flat_c1");
  auto base = make_base({0.6, 0.1});
  auto g = flat.metric()->eval(base, 3);
  auto Jj = flat.j_jets(base, 3);
  auto omega = fundamental_form(g, Jj);
  // omega(d_x, d_y) = g(J d_x, d_y) = g(d_y, d_y) = 1
  std::vector<Eigen::VectorXcd> dxdy = {Eigen::VectorXcd::Zero(2),
                                        Eigen::VectorXcd::Zero(2)};
  dxdy[0][0] = 1.0;
  dxdy[1][1] = 1.0;
  CHECK(std::abs(omega.value().evaluate(dxdy) - cplx(1.0)) < 1e-14);

  // omega(X, X) = 0
  SampleRng rng(221, 0);
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXcd X(2);
    X << rng.cgaussian(), rng.cgaussian();
    CHECK(std::abs(omega.value().evaluate({X, X})) < 1e-13);
  }

  // twisted torus: omega has no (2,0) or (0,2) component at 50 points
  auto tt = find_manifold("twisted_torus");
  auto wavy = tt.metric("wavy");
  for (int i = 0; i < 50; ++i) {
    SampleRng r2(231, i);
    auto p = tt.sample_point(r2);
    auto b2 = make_base(p);
    auto om = fundamental_form(wavy->eval(b2, 2), tt.j_jets(b2, 2));
    auto frame = coordinate_10_frame(tt, b2);
    CHECK(type_residual(om.value(), frame.full_value_matrix(), 1, 1) < 1e-10);
  }
}

TEST_CASE("wedge and interior consistency") {
  auto base = make_base({0.1, 0.2, 0.3, 0.4});
  SampleRng rng(241, 0);
  auto mk1 = [&]() {
    std::vector<Jet> c(4);
    for (int a = 0; a < 4; ++a) {
      c[a] = Jet::constant(4, 3, base, rng.cgaussian()) +
             Jet::coordinate(4, 3, base, (a + 1) % 4) * rng.cgaussian();
    }
    return form_from_jets(1, std::move(c));
  };
  auto a = mk1(), b = mk1();
  auto ab = wedge(a, b);
  auto ba = wedge(b, a);
  for (size_t i = 0; i < ab.comp.size(); ++i)
    CHECK((ab.comp[i] + ba.comp[i]).max_abs_coeff() < 1e-13);

  // i_v is an antiderivation: i_v(a ^ b) = (i_v a) b - a (i_v b) for 1-forms
  std::vector<Jet> v(4);
  for (int q = 0; q < 4; ++q) v[q] = Jet::constant(4, 3, base, rng.cgaussian());
  auto lhs = interior(ab, v);
  auto iva = interior(a, v);  // 0-form
  auto ivb = interior(b, v);
  for (int q = 0; q < 4; ++q) {
    const cplx want =
        iva.comp[0].value() * b.comp[q].value() - ivb.comp[0].value() * a.comp[q].value();
    CHECK(std::abs(lhs.comp[q].value() - want) < 1e-13);
  }

  // d^2 = 0 on jet coefficients
  auto d2 = exterior_d(exterior_d(a));
  for (const auto& j : d2.comp) CHECK(j.max_abs_coeff() < 1e-13);
}
