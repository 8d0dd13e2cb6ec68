#include "doctest.h"

#include <cmath>

#include "ahlab/expression.hpp"

using namespace ah;

namespace {
const std::vector<std::string> kXY = {"x1", "y1"};
}

TEST_CASE("precedence and literals") {
  auto e = Expression::parse("1 + 2*3", kXY);
  const double p[] = {0.0, 0.0};
  CHECK(e.eval(p) == 7.0);
  CHECK(Expression::parse("2^3 + 1", kXY).eval(p) == 9.0);
  CHECK(Expression::parse("-2^2", kXY).eval(p) == -4.0);  // ^ binds tighter
  CHECK(Expression::parse("6 - 2 - 3", kXY).eval(p) == 1.0);
  CHECK(Expression::parse("8 / 2 / 2", kXY).eval(p) == 2.0);
  CHECK(Expression::parse("2^-1", kXY).eval(p) == 0.5);
}

TEST_CASE("exp at origin") {
  auto e = Expression::parse("exp(x1^2 + y1^2)", kXY);
  const double p[] = {0.0, 0.0};
  CHECK(e.eval(p) == 1.0);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_WITH_AS((void)Expression::parse("x3", kXY),
                       doctest::Contains("unknown identifier"), Error);
  CHECK_THROWS_AS((void)Expression::parse("(x1 + y1", kXY), Error);
  CHECK_THROWS_AS((void)Expression::parse("x1 ^ y1", kXY), Error);
  CHECK_THROWS_AS((void)Expression::parse("x1 ^ 1.5", kXY), Error);
  CHECK_THROWS_AS((void)Expression::parse("tan(x1)", kXY), Error);
  CHECK_THROWS_AS((void)Expression::parse("x1 + ", kXY), Error);
}

TEST_CASE("print/parse round trip evaluates identically") {
  const char* exprs[] = {
      "exp(x1^2 + y1^2)",
      "1 + 2*x1 - y1/(3 + x1^2)",
      "-sin(x1)*cos(y1) + sqrt(4 + x1^2)",
      "x1^-2 * (1 + y1)^3",
  };
  uint64_t state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(state >> 11) / double(1ULL << 53) * 2.0 - 1.0;
  };
  for (const char* s : exprs) {
    auto e = Expression::parse(s, kXY);
    auto e2 = Expression::parse(e.str(), kXY);
    for (int i = 0; i < 100; ++i) {
      double p[2] = {next() + 1.5, next()};  // keep x1 away from 0 for ^-2
      CHECK(e.eval(p) == doctest::Approx(e2.eval(p)).epsilon(1e-15));
    }
  }
}

TEST_CASE("jet evaluation constant term matches double evaluation") {
  auto e = Expression::parse("exp(sin(x1) + y1^2) / (2 + cos(x1*y1))", kXY);
  const double pt[2] = {0.37, -0.81};
  auto base = make_base({pt[0], pt[1]});
  Jet j = e.eval_jet(base, 3);
  CHECK(std::abs(j.value().real() - e.eval(pt)) < 1e-15);
  CHECK(j.value().imag() == 0.0);
}

TEST_CASE("jet derivatives of expressions: ladder finite-difference oracle") {
  // order-k jet partials at p are checked against central differences of
  // order-(k-1) jet partials at shifted points; order-1 against doubles
  auto e = Expression::parse("exp(x1*y1) * cos(x1) + y1^3 / (2 + x1)", kXY);
  const double h = 1e-4;
  uint64_t state = 777;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(state >> 11) / double(1ULL << 53) * 1.6 - 0.8;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const double x = next(), y = next();
    auto base = make_base({x, y});
    Jet j3 = e.eval_jet(base, 3);

    // first order vs plain doubles
    for (int v = 0; v < 2; ++v) {
      double pp[2] = {x, y}, pm[2] = {x, y};
      pp[v] += h;
      pm[v] -= h;
      const double fd = (e.eval(pp) - e.eval(pm)) / (2 * h);
      int mi[2] = {0, 0};
      mi[v] = 1;
      const double got = j3.partial(mi).real();
      CHECK(std::abs(got - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
    }

    // order k vs central difference of order k-1 partials
    for (int k = 2; k <= 3; ++k) {
      for (int v = 0; v < 2; ++v) {
        int lower[2] = {0, 0};
        lower[v] = k - 1;  // representative pure + one mixed below
        int target[2] = {lower[0], lower[1]};
        ++target[v];
        auto lower_partial = [&](double a, double b2) {
          Jet jl = e.eval_jet(make_base({a, b2}), k - 1);
          return jl.partial(lower).real();
        };
        double pp0 = (v == 0) ? lower_partial(x + h, y) : lower_partial(x, y + h);
        double pm0 = (v == 0) ? lower_partial(x - h, y) : lower_partial(x, y - h);
        const double fd = (pp0 - pm0) / (2 * h);
        const double got = j3.partial(target).real();
        CHECK(std::abs(got - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
      }
      // a mixed index
      int mixed[2] = {1, k - 2};
      int target[2] = {1, k - 1};
      auto lower_partial = [&](double a, double b2) {
        Jet jl = e.eval_jet(make_base({a, b2}), k - 1);
        return jl.partial(mixed).real();
      };
      const double fd = (lower_partial(x, y + h) - lower_partial(x, y - h)) / (2 * h);
      CHECK(std::abs(j3.partial(target).real() - fd) <
            1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}
