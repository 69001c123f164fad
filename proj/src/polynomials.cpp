#include "dosc/polynomials.hpp"

#include <array>
#include <cmath>
#include <string>

#include "dosc/errors.hpp"

namespace dosc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_kravchuk_degree(int n, int N) {
  if (n > N) {
    throw DegreeError("Kravchuk degree " + std::to_string(n) + " exceeds N = " + std::to_string(N));
  }
}

template <class T>
T hermite_series(int n, T x) {
  // n! sum_{k=0}^{[n/2]} (-1)^k (2x)^(n-2k) / (k! (n-2k)!)
  T sum = T(0.0);
  const T two_x = T(2.0) * x;
  for (int k = 0; 2 * k <= n; ++k) {
    const double coef = std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - 2 * k));
    T power = T(1.0);
    for (int j = 0; j < n - 2 * k; ++j) power *= two_x;
    sum += ((k % 2 == 0) ? coef : -coef) * power;
  }
  return sum;
}

template <class T>
T laguerre_recurrence(int n, double alpha, T x) {
  T prev = T(1.0);
  if (n == 0) return prev;
  T cur = T(1.0 + alpha) - x;
  for (int k = 1; k < n; ++k) {
    T next = ((T(2.0 * k + 1.0 + alpha) - x) * cur - T(k + alpha) * prev) / T(k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

PolyTag tag_of(const PolyFamily& family) { return static_cast<PolyTag>(family.index()); }

void validate(const PolyFamily& family) {
  std::visit(overloaded{[](const HermiteParams&) {}, [](const LaguerreParams& l) {
                          if (!(l.alpha > -1.0)) throw ParameterError("alpha must exceed -1");
                        },
                        [](const auto& p) { validate(p); }},
             family);
}

cplx meixner_series(int n, cplx x, cplx beta, cplx gamma) {
  const std::array<cplx, 2> num = {cplx(-n), -x};
  const std::array<cplx, 1> den = {beta};
  return hyp_terminating(num, den, 1.0 - 1.0 / gamma, n);
}

cplx poly_eval(const PolyFamily& family, int n, cplx x) {
  if (n < 0) throw DomainError("poly_eval: negative degree");
  validate(family);
  return std::visit(
      overloaded{
          [&](const HermiteParams&) { return hermite_series<cplx>(n, x); },
          [&](const CharlierParams& c) {
            const std::array<cplx, 2> num = {cplx(-n), -x};
            return hyp_terminating(num, {}, cplx(-1.0 / c.mu), n);
          },
          [&](const KravchukParams& k) {
            require_kravchuk_degree(n, k.N);
            const std::array<cplx, 2> num = {cplx(-n), -x};
            const std::array<cplx, 1> den = {cplx(-k.N)};
            return hyp_terminating(num, den, cplx(1.0 / k.p), n);
          },
          [&](const MeixnerParams& m) { return meixner_series(n, x, m.beta, m.gamma); },
          [&](const LaguerreParams& l) { return laguerre_recurrence<cplx>(n, l.alpha, x); },
          [&](const MeixnerPollaczekParams& mp) {
            const cplx i(0.0, 1.0);
            const std::array<cplx, 2> num = {cplx(-n), mp.lambda - i * x};
            const std::array<cplx, 1> den = {cplx(2.0 * mp.lambda)};
            const cplx f = hyp_terminating(num, den, 1.0 - std::exp(2.0 * i * mp.phi), n);
            const double lead = std::exp(log_pochhammer(2.0 * mp.lambda, n).log_magnitude -
                                         log_factorial(n));
            return lead * std::exp(-i * double(n) * mp.phi) * f;
          }},
      family);
}

double poly_eval_recurrence(const PolyFamily& family, int n, double x) {
  if (n < 0) throw DomainError("poly_eval_recurrence: negative degree");
  validate(family);
  if (n == 0) return 1.0;

  // p_{k+1} = (a_k p_k - c_k p_{k-1}) / b_k
  struct Coeffs {
    double a, b, c;
  };
  auto run = [&](auto coeffs) {
    double prev = 1.0;
    double cur = std::real(poly_eval(family, 1, x));
    for (int k = 1; k < n; ++k) {
      const Coeffs r = coeffs(k);
      const double next = (r.a * cur - r.c * prev) / r.b;
      prev = cur;
      cur = next;
    }
    return cur;
  };

  return std::visit(
      overloaded{
          [&](const HermiteParams&) {
            return run([&](int k) { return Coeffs{2.0 * x, 1.0, 2.0 * k}; });
          },
          [&](const CharlierParams& c) {
            return run([&](int k) { return Coeffs{k + c.mu - x, c.mu, double(k)}; });
          },
          [&](const KravchukParams& kp) {
            require_kravchuk_degree(n, kp.N);
            const double p = kp.p;
            const double q = 1.0 - p;
            return run([&](int k) {
              return Coeffs{p * (kp.N - k) + k * q - x, p * (kp.N - k), k * q};
            });
          },
          [&](const MeixnerParams& m) {
            const double g = m.gamma;
            return run([&](int k) {
              return Coeffs{k + (k + m.beta) * g - (1.0 - g) * x, (k + m.beta) * g, double(k)};
            });
          },
          [&](const LaguerreParams& l) { return laguerre_recurrence<double>(n, l.alpha, x); },
          [&](const MeixnerPollaczekParams&) -> double {
            throw ParameterError("poly_eval_recurrence: Meixner-Pollaczek is evaluated by series");
          }},
      family);
}

double poly_value(const PolyFamily& family, int n, double x) {
  const PolyTag tag = tag_of(family);
  const bool symmetric = tag == PolyTag::Meixner || tag == PolyTag::Charlier || tag == PolyTag::Kravchuk;
  if (symmetric && x >= 0.0 && x < n && x == std::floor(x)) {
    return poly_value(family, static_cast<int>(x), double(n));
  }
  if (n > 30 && tag_of(family) != PolyTag::MeixnerPollaczek) {
    return poly_eval_recurrence(family, n, x);
  }
  return std::real(poly_eval(family, n, cplx(x)));
}

double charlier_printed(int n, double x, double mu) {
  validate(CharlierParams{mu});
  const std::array<double, 2> num = {double(-n), -x};
  return hyp_terminating(num, {}, 1.0 / mu, n);
}

double kravchuk_from_meixner(int n, double x, double p, int N) {
  validate(KravchukParams{p, N});
  require_kravchuk_degree(n, N);
  return std::real(meixner_series(n, x, double(-N), p / (p - 1.0)));
}

cplx mp_from_meixner(int n, double x, double lambda, double phi) {
  validate(MeixnerPollaczekParams{lambda, phi});
  const cplx i(0.0, 1.0);
  const cplx m = meixner_series(n, i * x - lambda, 2.0 * lambda, std::exp(-2.0 * i * phi));
  const double lead =
      std::exp(log_pochhammer(2.0 * lambda, n).log_magnitude - log_factorial(n));
  return std::exp(-i * double(n) * phi) * lead * m;
}

}  // namespace dosc
