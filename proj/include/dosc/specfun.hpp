#pragma once

#include <complex>
#include <span>

namespace dosc {

using cplx = std::complex<double>;

/// A real number held as sign * exp(log_magnitude). Weights and norms of the
/// half-infinite lattices leave double range long before the tails become
/// negligible, so all of them are carried in this form.
struct LogWeight {
  double log_magnitude = 0.0;
  int sign = 1;  // +1, -1, or 0 for an exact zero

  static LogWeight from_value(double v);
  static LogWeight from_log(double log_magnitude, int sign = 1) {
    return LogWeight{log_magnitude, sign};
  }
  static LogWeight zero() { return LogWeight{0.0, 0}; }

  bool is_zero() const { return sign == 0; }
  double value() const;

  LogWeight operator*(const LogWeight& o) const;
  LogWeight operator/(const LogWeight& o) const;
  /// Square root of |value|; sign is dropped.
  LogWeight sqrt_abs() const;
  LogWeight pow(double e) const;
};

/// ln Gamma(x) for x > 0. Throws DomainError for x <= 0.
double log_gamma(double x);

/// Principal branch of ln Gamma(z): the imaginary part lies in (-pi, pi].
/// Throws DomainError at the poles z = 0, -1, -2, ...
cplx log_gamma_complex(cplx z);

/// |Gamma(z)|^2 through exp(2 Re ln Gamma(z)).
double gamma_abs_sq(cplx z);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
double pochhammer(double a, int n);
cplx pochhammer(cplx a, int n);

/// (a)_n in log form. Works for negative a (terminating factors give zero).
LogWeight log_pochhammer(double a, int n);

/// ln n! for integer n >= 0.
double log_factorial(int n);

/// ln C(N, k) for real k in [0, N] (Gamma extension).
double log_binomial(double N, double k);

/// Terminating generalized hypergeometric sum
///   sum_{k=0}^{n} prod (num)_k / prod (den)_k * z^k / k!
/// accumulated with k ascending. Throws ParameterError when a denominator
/// parameter equals -m for an integer m < n, since (den)_k would vanish for
/// some k <= n.
cplx hyp_terminating(std::span<const cplx> num, std::span<const cplx> den, cplx z, int n);
double hyp_terminating(std::span<const double> num, std::span<const double> den, double z,
                       int n);

/// Modified Bessel function I_nu(x), nu >= 0, x >= 0, by its power series.
double bessel_i(double nu, double x);

}  // namespace dosc
