#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "dosc/errors.hpp"
#include "dosc/models.hpp"
#include "dosc/polynomials.hpp"

using namespace dosc;
using Rational = boost::multiprecision::cpp_rational;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// exact 2F1(-n, -x; c; z) (or 2F0 when c is absent) over the rationals
Rational exact_hyp(int n, Rational x, const Rational* c, Rational z) {
  Rational sum = 1, term = 1;
  for (int k = 0; k < n; ++k) {
    term *= Rational(-n + k) * (-x + k) * z / Rational(k + 1);
    if (c) term /= (*c + k);
    sum += term;
  }
  return sum;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

TEST_SUITE("polynomials") {
  TEST_CASE("degree zero is one for every family") {
    const std::vector<PolyFamily> fams = {HermiteParams{},         CharlierParams{2.0},
                                          KravchukParams{0.3, 5},  MeixnerParams{1.5, 0.4},
                                          LaguerreParams{0.5},     MeixnerPollaczekParams{1.0, 1.0}};
    for (const auto& f : fams) CHECK(std::abs(poly_eval(f, 0, cplx(2.3, 0.4)) - 1.0) < 1e-15);
  }

  TEST_CASE("low degree closed forms") {
    const double b = 1.5, g = 0.4, x = 2.7;
    CHECK(rel(std::real(poly_eval(MeixnerParams{b, g}, 1, x)), 1.0 + x * (1.0 - 1.0 / g) / b) < 1e-15);
    CHECK(rel(std::real(poly_eval(HermiteParams{}, 2, 1.0)), 2.0) < 1e-15);
    for (double xi : {-1.3, 0.2, 2.9}) {
      CHECK(rel(std::real(poly_eval(HermiteParams{}, 3, xi)), 8 * xi * xi * xi - 12 * xi) < 1e-14);
    }
    CHECK(rel(std::real(poly_eval(LaguerreParams{1.0}, 1, 2.0)) + 1.0, 1.0) < 1e-15);
    // P_1^1(x; pi/2) = 2x
    const MeixnerPollaczekParams mp{1.0, std::numbers::pi / 2};
    for (double xi : {-0.7, 0.5, 3.0}) {
      const cplx v = poly_eval(mp, 1, xi);
      CHECK(std::abs(v.real() - 2.0 * xi) < 1e-14);
      CHECK(std::abs(v.imag()) < 1e-14);
    }
  }

  TEST_CASE("Charlier convention") {
    // the orthogonal convention carries -1/mu; the printed one +1/mu
    CHECK(charlier_printed(2, 2.0, 1.0) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(std::real(poly_eval(CharlierParams{1.0}, 2, 2.0)) == doctest::Approx(-1.0).epsilon(1e-15));
    const double mu = 1.3;
    double orth = 0.0, printed = 0.0;
    for (int k = 0; k < 80; ++k) {
      const double w = weight(CharlierParams{mu}, k).value();
      orth += w * std::real(poly_eval(CharlierParams{mu}, 1, k)) *
              std::real(poly_eval(CharlierParams{mu}, 3, k));
      printed += w * charlier_printed(1, k, mu) * charlier_printed(3, k, mu);
    }
    CHECK(std::abs(orth) < 1e-13);
    CHECK(std::abs(printed) > 1e-2);
  }

  TEST_CASE("series against exact rational arithmetic") {
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n) {
      for (int x = -8; x <= 8; ++x) {
        const Rational beta(3, 2), gamma(2, 5);
        const Rational zm = 1 - 1 / gamma;
        const double m = to_double(exact_hyp(n, x, &beta, zm));
        worst = std::max(worst, rel(std::real(poly_eval(MeixnerParams{1.5, 0.4}, n, double(x))), m) *
                                    (std::abs(m) > 1e-300));
        const Rational mu(7, 4);
        const double c = to_double(exact_hyp(n, x, nullptr, -1 / mu));
        if (c != 0.0) worst = std::max(worst, rel(std::real(poly_eval(CharlierParams{1.75}, n, double(x))), c));
        if (x >= 0) {
          const Rational mN(-8), p(3, 10);
          const double k = to_double(exact_hyp(n, x, &mN, 1 / p));
          if (k != 0.0) worst = std::max(worst, rel(std::real(poly_eval(KravchukParams{0.3, 8}, n, double(x))), k));
        }
      }
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("recurrence matches series") {
    CHECK(rel(poly_eval_recurrence(MeixnerParams{1.5, 0.4}, 6, 3.7), -2.8212049844155834092) < 1e-11);
    CHECK(poly_eval_recurrence(MeixnerParams{1.5, 0.4}, 0, 3.7) == 1.0);
    CHECK(poly_eval_recurrence(MeixnerParams{1.5, 0.4}, 1, 3.7) ==
          std::real(poly_eval(MeixnerParams{1.5, 0.4}, 1, 3.7)));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.0, 10.0), ub(0.5, 4.0), ug(0.1, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
      const MeixnerParams m{ub(rng), ug(rng)};
      const double x = ux(rng);
      for (int n = 0; n <= 20; ++n) {
        const double s = std::real(poly_eval(m, n, x));
        const double r = poly_eval_recurrence(m, n, x);
        // near a zero the relative comparison loses meaning; scale by the
        // largest term of the series instead
        double scale = 0.0, term = 1.0;
        for (int k = 0; k <= n; ++k) {
          scale = std::max(scale, std::abs(term));
          term *= (-n + k) * (-x + k) * (1.0 - 1.0 / m.gamma) / ((m.beta + k) * (k + 1.0));
        }
        CHECK(std::abs(s - r) <= 1e-10 * std::max(std::abs(s), 1e-4 * scale));
      }
    }
    for (int n = 0; n <= 12; ++n) {
      CHECK(rel(poly_eval_recurrence(HermiteParams{}, n, 0.83), std::real(poly_eval(HermiteParams{}, n, 0.83))) < 1e-13);
    }
  }

  TEST_CASE("self-duality") {
    for (int n = 0; n <= 8; ++n) {
      for (int x = 0; x <= 8; ++x) {
        const double a = std::real(poly_eval(CharlierParams{1.7}, n, double(x)));
        const double b = std::real(poly_eval(CharlierParams{1.7}, x, double(n)));
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        const double c = std::real(poly_eval(MeixnerParams{2.3, 0.35}, n, double(x)));
        const double d = std::real(poly_eval(MeixnerParams{2.3, 0.35}, x, double(n)));
        CHECK(std::abs(c - d) <= 1e-12 * std::max(1.0, std::abs(c)));
      }
    }
  }

  TEST_CASE("Meixner difference equation") {
    const MeixnerParams m{1.8, 0.45};
    for (int n = 0; n <= 10; ++n) {
      for (int x = 0; x <= 12; ++x) {
        const double up = m.gamma * (x + m.beta) * std::real(poly_eval(m, n, x + 1.0));
        const double mid = (x + (x + m.beta) * m.gamma) * std::real(poly_eval(m, n, double(x)));
        const double down = x * std::real(poly_eval(m, n, x - 1.0));
        const double rhs = n * (m.gamma - 1.0) * std::real(poly_eval(m, n, double(x)));
        const double scale = std::max({std::abs(up), std::abs(mid), std::abs(down), std::abs(rhs), 1.0});
        CHECK(std::abs(up - mid + down - rhs) <= 1e-10 * scale);
      }
    }
  }

  TEST_CASE("degree property by interpolation") {
    const PolyFamily fams[] = {MeixnerParams{2.0, 0.3}, CharlierParams{0.8}, HermiteParams{}};
    for (const auto& f : fams) {
      for (int n = 1; n <= 7; ++n) {
        // Lagrange interpolation through n + 1 nodes, evaluated at one more
        std::vector<double> nodes, vals;
        for (int i = 0; i <= n; ++i) {
          nodes.push_back(0.5 * i - 0.3);
          vals.push_back(std::real(poly_eval(f, n, nodes.back())));
        }
        const double t = 0.5 * (n + 1) + 0.1;
        double interp = 0.0;
        for (int i = 0; i <= n; ++i) {
          double l = 1.0;
          for (int j = 0; j <= n; ++j) {
            if (j != i) l *= (t - nodes[j]) / (nodes[i] - nodes[j]);
          }
          interp += l * vals[i];
        }
        const double direct = std::real(poly_eval(f, n, t));
        CHECK(std::abs(interp - direct) <= 1e-8 * std::max(1.0, std::abs(direct)));
      }
    }
  }

  TEST_CASE("Kravchuk degree limit") {
    CHECK_THROWS_AS(poly_eval(KravchukParams{0.5, 4}, 5, 1.0), DegreeError);
    CHECK_THROWS_AS(kravchuk_from_meixner(5, 1.0, 0.5, 4), DegreeError);
  }

  TEST_CASE("Kravchuk as Meixner with beta = -N") {
    CHECK(kravchuk_from_meixner(0, 2.0, 0.4, 5) == 1.0);
    CHECK(rel(kravchuk_from_meixner(2, 3.0, 0.5, 5), std::real(poly_eval(KravchukParams{0.5, 5}, 2, 3.0))) < 1e-12);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> up(0.05, 0.95);
    for (int trial = 0; trial < 200; ++trial) {
      const int N = 1 + int(rng() % 8);
      const int n = int(rng() % (N + 1));
      const int x = int(rng() % (N + 1));
      const double p = up(rng);
      const Rational pr(static_cast<long long>(std::llround(p * 1e6)), 1000000LL);
      const double pd = to_double(pr);
      const Rational mN(-N);
      const double exact = to_double(exact_hyp(n, x, &mN, 1 / pr));
      const double a = kravchuk_from_meixner(n, x, pd, N);
      const double b = std::real(poly_eval(KravchukParams{pd, N}, n, double(x)));
      CHECK(std::abs(a - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
      CHECK(std::abs(b - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
    }
  }

  TEST_CASE("Meixner-Pollaczek through Meixner") {
    CHECK(std::abs(mp_from_meixner(0, 1.2, 0.7, 1.0) - 1.0) < 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), ul(0.3, 3.0), uphi(0.2, 2.9);
    for (int trial = 0; trial < 60; ++trial) {
      const double x = ux(rng), lambda = ul(rng), phi = uphi(rng);
      for (int n = 0; n <= 6; ++n) {
        const cplx a = mp_from_meixner(n, x, lambda, phi);
        const cplx b = poly_eval(MeixnerPollaczekParams{lambda, phi}, n, x);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
        CHECK(std::abs(a.imag()) <= 1e-10 * std::max(1.0, std::abs(b)));
      }
    }
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(poly_eval(MeixnerParams{2.0, 1.2}, 1, 0.0), ParameterError);
    CHECK_THROWS_WITH(poly_eval(MeixnerParams{2.0, 1.2}, 1, 0.0), "gamma must lie in (0,1)");
    CHECK_THROWS_AS(poly_eval(CharlierParams{-1.0}, 1, 0.0), ParameterError);
    CHECK_THROWS_AS(poly_eval(KravchukParams{1.0, 3}, 1, 0.0), ParameterError);
    CHECK_THROWS_AS(poly_eval(MeixnerPollaczekParams{1.0, 4.0}, 1, 0.0), ParameterError);
  }
}

TEST_CASE("high degree at small integer points" * doctest::test_suite("polynomials")) {
  for (const PolyFamily& f : {PolyFamily{MeixnerParams{2.0, 0.3}}, PolyFamily{CharlierParams{1.5}}}) {
    for (int x : {0, 1, 3, 6}) {
      for (int n : {40, 200, 600}) {
        const double series = std::real(poly_eval(f, n, double(x)));
        CHECK(std::abs(poly_value(f, n, x) - series) <= 1e-12 * std::max(1.0, std::abs(series)));
      }
    }
  }
}
