#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dosc/errors.hpp"
#include "dosc/kernels.hpp"
#include "dosc/polynomials.hpp"

using namespace dosc;

namespace {

const cplx I(0.0, 1.0);

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("series at t = 0 and a geometric case") {
    const MeixnerParams m{2.0, 0.4};
    for (int a : {0, 3, 7}) {
      for (int b : {0, 2, 9}) {
        CHECK(kernel_series(m, 0.0, a, b, 50).value ==
              cplx(wavefunction(m, 0, a) * wavefunction(m, 0, b)));
      }
    }
    // psi_n(0)^2 = (1 - gamma)^beta gamma^n (beta)_n / n!; beta = 1, gamma = 1/2 sums to 2/3
    const auto s = kernel_series(MeixnerParams{1.0, 0.5}, 0.5, 0, 0, 80);
    CHECK(std::abs(s.value - 2.0 / 3.0) <= 1e-15);
    CHECK(s.converged);
    CHECK_FALSE(kernel_series(m, 0.9, 5, 5, 3).converged);
    CHECK(kernel_series(m, 0.7, 4, 11, 200).value == kernel_series(m, 0.7, 11, 4, 200).value);
  }

  TEST_CASE("closed form against the series") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(0, 10);
    const MeixnerParams m{2.0, 0.3};
    for (int trial = 0; trial < 30; ++trial) {
      const int a = pick(rng), b = pick(rng);
      for (cplx t : {cplx(0.5), cplx(-0.9), cplx(0.3, 0.6), cplx(0.0, 0.9)}) {
        const cplx series = kernel_series(m, t, a, b, 1500).value;
        CHECK(std::abs(kernel_closed(m, t, a, b) - series) <= 1e-9 * std::max(1.0, std::abs(series)));
      }
    }
    CHECK(std::abs(kernel_closed(m, 0.0, 3, 5) - wavefunction(m, 0, 3) * wavefunction(m, 0, 5)) <= 1e-16);
    CHECK(std::abs(kernel_closed(m, 0.5, 2, 7) - kernel_closed(m, 0.5, 7, 2)) <= 1e-15);
    CHECK_THROWS_AS(kernel_closed(m, 1.0, 2, 2), DomainError);
  }

  TEST_CASE("the (1 - gamma^2) argument disagrees with the series") {
    const MeixnerParams m{2.0, 0.3};
    const cplx series = kernel_series(m, 0.5, 1, 2, 400).value;
    CHECK(std::abs(kernel_closed_printed(m, 0.5, 1, 2) - series) > 1e-2);
  }

  TEST_CASE("Poisson kernel") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      const MeixnerParams m{0.5 + 3.0 * u(rng), 0.1 + 0.8 * u(rng)};
      const int a = static_cast<int>(8 * u(rng)), b = static_cast<int>(8 * u(rng));
      const cplx t = std::polar(0.8 * u(rng), 6.283 * u(rng));
      // t -> gamma t turns the Poisson kernel into the normalized kernel
      const double pre = std::exp(0.5 * (weight(m, a).log_magnitude + weight(m, b).log_magnitude)) *
                         std::pow(1.0 - m.gamma, m.beta);
      CHECK(std::abs(pre * poisson_kernel(m, m.gamma * t, a, b) - kernel_closed(m, t, a, b)) <=
            1e-10 * std::abs(kernel_closed(m, t, a, b)));
      // direct sum with the polynomials
      cplx s = 0.0, c = 1.0;
      const PolyFamily f = m;
      const cplx tt = m.gamma * t;
      for (int n = 0; n < 600 && std::abs(c) > 1e-200; ++n) {
        s += c * poly_eval(f, n, a) * poly_eval(f, n, b);
        c *= tt * (m.beta + n) / (n + 1.0);
      }
      CHECK(std::abs(poisson_kernel(m, tt, a, b) - s) <= 1e-9 * std::abs(s));
    }
    // mpmath: 0.2371 against 0.3926 for the (1 - gamma^2) reading
    const MeixnerParams m{2.0, 0.3};
    CHECK(std::abs(poisson_kernel(m, 0.5, 1, 2, true) - poisson_kernel(m, 0.5, 1, 2)) > 0.1);
  }

  TEST_CASE("t -> 1 limit") {
    const MeixnerParams m{2.0, 0.4};
    const auto d = kernel_limit_one(m, 3, 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(d.values[k] - 1.0) <= 10 * d.eps[k]);
    CHECK(std::abs(d.values[2] - 1.0) <= 1e-3);
    CHECK(d.monotone);
    const auto o = kernel_limit_one(m, 2, 5);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(o.values[k]) <= 10 * o.eps[k]);
    CHECK(std::abs(o.extrapolated) <= 1e-6);
    CHECK(std::abs(kernel_limit_one(m, 0, 0).extrapolated - 1.0) <= 1e-6);
  }

  TEST_CASE("reproduction and composition") {
    const MeixnerParams m{2.0, 0.4};
    const int dim = 140, window = dim / 4;
    const auto k5 = kernel_matrix(m, 0.5, dim);
    CHECK(reproduction_defect(k5, 6, window) <= 1e-7);
    CHECK(composition_defect(kernel_matrix(m, 0.6, dim), k5, kernel_matrix(m, 0.3, dim), window) <= 1e-7);
    const cplx t(0.6, 0.2);
    CHECK(composition_defect(kernel_matrix(m, t, dim), kernel_matrix(m, 0.3, dim), kernel_matrix(m, 0.3 * t, dim),
                             window) <= 1e-7);
    CHECK(composition_defect(kernel_matrix(m, t, dim), k5, kernel_matrix(m, 0.5 * t, dim), window) <= 1e-7);
    const auto k0 = kernel_matrix(m, 0.0, 10);
    CHECK(std::abs(k0.entries(2, 7) - wavefunction(m, 0, 2) * wavefunction(m, 0, 7)) <= 1e-16);
  }

  TEST_CASE("t = i") {
    const MeixnerParams m{2.0, 0.4};
    const int window = 16;
    const int dim = kernel_support(m, I, window);
    CHECK(dim > 10 * window);
    const auto ki = kernel_matrix(m, I, dim);
    CHECK(unitarity_defect(ki, window) <= 1e-6);
    CHECK(reproduction_defect(ki, 6, window) <= 1e-7);
    // K_i K_i = K_{-1}
    CHECK(composition_defect(ki, ki, kernel_matrix(m, -1.0, dim), window) <= 1e-6);
    for (auto [a, b] : {std::pair{0, 0}, std::pair{2, 5}, std::pair{7, 3}}) {
      const cplx abel = kernel_series_abel(m, I, a, b, 400);
      CHECK(std::abs(kernel_i(m, a, b) - abel) <= 1e-5);
      CHECK(std::abs(kernel_i(m, a, b) - kernel_i(m, b, a)) <= 1e-15);
    }
    // the printed -beta parameter: singular for integer beta, wrong otherwise
    CHECK(std::isnan(kernel_i_printed(m, 4, 5).real()));
    const MeixnerParams m25{2.5, 0.4};
    CHECK(std::abs(kernel_i_printed(m25, 3, 4) - kernel_series_abel(m25, I, 3, 4, 400)) > 1e-3);
    CHECK(std::abs(kernel_i_printed(m25, 0, 4) - kernel_i(m25, 0, 4)) <= 1e-15);
  }

  TEST_CASE("fractional transforms on the unit circle") {
    const MeixnerParams m{2.0, 0.4};
    const double t1 = 0.7, t2 = 1.1;
    const int dim = kernel_support(m, std::polar(1.0, t1 + t2), 12);
    CHECK(composition_defect(kernel_matrix(m, std::polar(1.0, t1), dim), kernel_matrix(m, std::polar(1.0, t2), dim),
                             kernel_matrix(m, std::polar(1.0, t1 + t2), dim), 12) <= 1e-4);
  }

  TEST_CASE("Charlier kernel") {
    CHECK(std::abs(charlier_kernel(1.5, 0, 0) - std::exp(-cplx(1.0, -1.0) * 1.5)) <= 1e-15);
    for (double mu : {0.7, 2.0}) {
      for (auto [a, b] : {std::pair{0, 3}, std::pair{4, 4}, std::pair{6, 2}}) {
        CHECK(std::abs(charlier_kernel(mu, a, b) - kernel_series_abel(CharlierParams{mu}, I, a, b, 300)) <= 1e-5);
      }
    }
    const auto kc = kernel_matrix(CharlierParams{1.0}, I, 80);
    CHECK(unitarity_defect(kc, 20) <= 1e-5);
    // beta -> infinity with beta gamma = mu
    double prev = INFINITY;
    for (double beta : {1e2, 1e3, 1e4}) {
      const double err = std::abs(kernel_i(MeixnerParams{beta, 1.0 / beta}, 3, 2) - charlier_kernel(1.0, 3, 2));
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev <= 1e-3);
  }

  TEST_CASE("Kravchuk kernel") {
    const KravchukParams k{0.5, 4};
    double worst = 0.0;
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        worst = std::max(worst, std::abs(kravchuk_kernel(0.5, 4, a, b) - kernel_series(k, I, a, b, 4).value));
      }
    }
    CHECK(worst <= 1e-9);
    for (double p : {0.2, 0.7}) {
      const KravchukParams kp{p, 12};
      for (int a = 0; a <= 12; a += 3) {
        for (int b = 0; b <= 12; b += 2) {
          CHECK(std::abs(kravchuk_kernel(p, 12, a, b) - kernel_series(kp, I, a, b, 12).value) <= 1e-9);
        }
      }
      CHECK(unitarity_defect(kernel_matrix(kp, I, 13), 13) <= 1e-9);
    }
    const double q = 0.5;
    CHECK(std::abs(kravchuk_kernel(0.5, 4, 0, 0) - std::pow(1.0 - cplx(1.0, -1.0) * 0.5, 4) * std::pow(q, 0)) <=
          1e-15);
    CHECK_THROWS_AS(kravchuk_kernel(0.5, 4, 5, 0), DomainError);
  }

  TEST_CASE("CSV") {
    std::ostringstream out;
    write_kernel_csv(out, kernel_matrix(KravchukParams{0.5, 2}, I, 3));
    const std::string s = out.str();
    CHECK(s.rfind("xi,xi_prime,re,im\n0,0,", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 10);
  }
}
