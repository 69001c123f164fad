#include "dosc/kernels.hpp"

#include <cmath>
#include <limits>

#include "dosc/csv.hpp"
#include "dosc/errors.hpp"

namespace dosc {

namespace {

const cplx kOneMinusI(1.0, -1.0);

int as_point(double x, const char* what) {
  if (x < 0.0 || x != std::floor(x)) throw DomainError(std::string(what) + " must be a nonnegative integer");
  return static_cast<int>(x);
}

cplx hyp21(int xi, int xi_prime, cplx c, cplx z) {
  const cplx num[2] = {cplx(-xi), cplx(-xi_prime)};
  const cplx den[1] = {c};
  return hyp_terminating(num, den, z, std::min(xi, xi_prime));
}

// Columns psi_0..psi_{n_max} at each of the first dim lattice points: P(n, xi).
Eigen::MatrixXd columns(const ModelParams& model, int n_max, int dim) {
  return build_wavetable(lattice_grid(model, dim), n_max).values.leftCols(dim);
}

Eigen::MatrixXcd series_matrix(const Eigen::MatrixXd& P, cplx t) {
  Eigen::VectorXd re(P.rows()), im(P.rows());
  cplx p = 1.0;
  for (Eigen::Index n = 0; n < P.rows(); ++n, p *= t) {
    re(n) = p.real();
    im(n) = p.imag();
  }
  Eigen::MatrixXcd out(P.cols(), P.cols());
  out.real() = P.transpose() * re.asDiagonal() * P;
  out.imag() = P.transpose() * im.asDiagonal() * P;
  return out;
}

// 2F1(-xi, -xi'; c; z) with sum |term| / |sum| in cond.
cplx hyp21_cond(int xi, int xi_prime, double c, cplx z, double& cond) {
  cplx term = 1.0, sum = 1.0;
  double mass = 1.0;
  for (int k = 0; k < std::min(xi, xi_prime); ++k) {
    term *= (k - xi) * double(k - xi_prime) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    mass += std::abs(term);
  }
  cond = mass / std::abs(sum);
  return sum;
}

cplx meixner_closed(const MeixnerParams& m, cplx t, int xi, int xi_prime, bool printed, double* cond = nullptr) {
  validate(m);
  if (t == cplx(1.0)) throw DomainError("kernel_closed is singular at t = 1");
  if (t == cplx(1.0 / m.gamma)) throw DomainError("kernel_closed is singular at t = 1/gamma");
  const int s = xi + xi_prime;
  const double g = m.gamma;
  const cplx log_pre = 0.5 * (weight(m, xi).log_magnitude + weight(m, xi_prime).log_magnitude) +
                       m.beta * std::log1p(-g) + double(s) * std::log(1.0 - t) -
                       (s + m.beta) * std::log(1.0 - g * t);
  const double num = printed ? 1.0 - g * g : (1.0 - g) * (1.0 - g);
  const cplx z = t * num / (g * (1.0 - t) * (1.0 - t));
  if (cond) return std::exp(log_pre) * hyp21_cond(xi, xi_prime, m.beta, z, *cond);
  return std::exp(log_pre) * hyp21(xi, xi_prime, m.beta, z);
}

// Closed-form sums whose terms cancel beyond this are replaced by the series.
constexpr double kMaxCancellation = 1e4;

}  // namespace

KernelSeries kernel_series(const ModelParams& model, cplx t, double xi, double xi_prime, int n_cutoff) {
  validate(model);
  if (n_cutoff < 0) throw DegreeError("n_cutoff must be nonnegative");
  if (const auto* k = std::get_if<KravchukParams>(&model)) n_cutoff = std::min(n_cutoff, k->N);
  const auto a = wavefunction_column(model, xi, n_cutoff);
  const auto b = xi == xi_prime ? a : wavefunction_column(model, xi_prime, n_cutoff);
  KernelSeries out{0.0, 0.0, true};
  cplx p = 1.0;
  for (int n = 0; n <= n_cutoff; ++n, p *= t) out.value += p * (a[n] * b[n]);
  out.last_term = std::abs(std::pow(t, n_cutoff)) * std::abs(a[n_cutoff] * b[n_cutoff]);
  const bool finite = std::holds_alternative<KravchukParams>(model);
  out.converged = finite || out.last_term <= 1e-12 * std::abs(out.value);
  return out;
}

cplx kernel_series_abel(const ModelParams& model, cplx t, double xi, double xi_prime, int n_cutoff, double h) {
  const cplx a = kernel_series(model, (1.0 - h) * t, xi, xi_prime, n_cutoff).value;
  const cplx b = kernel_series(model, (1.0 - 2.0 * h) * t, xi, xi_prime, n_cutoff).value;
  return 2.0 * a - b;
}

cplx kernel_closed(const MeixnerParams& m, cplx t, int xi, int xi_prime) {
  as_point(xi, "xi");
  as_point(xi_prime, "xi_prime");
  return meixner_closed(m, t, xi, xi_prime, false);
}

cplx kernel_closed_printed(const MeixnerParams& m, cplx t, int xi, int xi_prime) {
  as_point(xi, "xi");
  as_point(xi_prime, "xi_prime");
  return meixner_closed(m, t, xi, xi_prime, true);
}

cplx poisson_kernel(const MeixnerParams& m, cplx t, int xi, int xi_prime, bool printed) {
  validate(m);
  as_point(xi, "xi");
  as_point(xi_prime, "xi_prime");
  const double g = m.gamma;
  const int s = xi + xi_prime;
  const cplx z = t * (printed ? 1.0 - g * g : (1.0 - g) * (1.0 - g)) / ((t - g) * (t - g));
  const cplx pre = std::exp(-(m.beta + s) * std::log(1.0 - t)) * std::pow(1.0 - t / g, s);
  return pre * hyp21(xi, xi_prime, m.beta, z);
}

LimitOne kernel_limit_one(const MeixnerParams& m, int xi, int xi_prime) {
  LimitOne out;
  const double delta = xi == xi_prime ? 1.0 : 0.0;
  for (int k = 0; k < 3; ++k) out.values[k] = kernel_closed(m, 1.0 - out.eps[k], xi, xi_prime).real();
  for (int k = 1; k < 3; ++k) {
    if (std::abs(out.values[k] - delta) > std::abs(out.values[k - 1] - delta)) out.monotone = false;
  }
  const double e1 = out.eps[1], e2 = out.eps[2];
  out.extrapolated = out.values[2] + (out.values[2] - out.values[1]) * e2 / (e1 - e2);
  return out;
}

cplx kernel_i(const MeixnerParams& m, int xi, int xi_prime) { return kernel_closed(m, cplx(0.0, 1.0), xi, xi_prime); }

cplx kernel_i_printed(const MeixnerParams& m, int xi, int xi_prime) {
  validate(m);
  as_point(xi, "xi");
  as_point(xi_prime, "xi_prime");
  const int s = xi + xi_prime;
  const double g = m.gamma;
  const double nb = -m.beta;
  if (nb == std::floor(nb) && -nb < std::min(xi, xi_prime)) return std::numeric_limits<double>::quiet_NaN();
  const cplx log_pre = 0.5 * (weight(m, xi).log_magnitude + weight(m, xi_prime).log_magnitude) +
                       m.beta * std::log1p(-g) + double(s) * std::log(kOneMinusI) -
                       (s + m.beta) * std::log(cplx(1.0, -g));
  return std::exp(log_pre) * hyp21(xi, xi_prime, nb, -(1.0 - g) * (1.0 - g) / (2.0 * g));
}

cplx charlier_kernel(double mu, int xi, int xi_prime) {
  validate(CharlierParams{mu});
  as_point(xi, "xi");
  as_point(xi_prime, "xi_prime");
  const int s = xi + xi_prime;
  const cplx log_pre = -kOneMinusI * mu + double(s) * std::log(kOneMinusI) +
                       0.5 * (s * std::log(mu) - log_factorial(xi) - log_factorial(xi_prime));
  const cplx num[2] = {cplx(-xi), cplx(-xi_prime)};
  const cplx f = hyp_terminating(num, std::span<const cplx>{}, -1.0 / (2.0 * mu), std::min(xi, xi_prime));
  return std::exp(log_pre) * f;
}

cplx kravchuk_kernel(double p, int N, int xi, int xi_prime) {
  validate(KravchukParams{p, N});
  if (xi < 0 || xi > N || xi_prime < 0 || xi_prime > N) throw DomainError("xi must lie in 0..N");
  const double q = 1.0 - p;
  const int s = xi + xi_prime;
  const cplx log_pre = double(s) * std::log(kOneMinusI) + 0.5 * s * std::log(p * q) +
                       0.5 * (log_binomial(N, xi) + log_binomial(N, xi_prime)) +
                       double(N - s) * std::log(1.0 - kOneMinusI * p);
  return std::exp(log_pre) * hyp21(xi, xi_prime, double(-N), 1.0 / (2.0 * p * q));
}

KernelMatrix kernel_matrix(const ModelParams& model, cplx t, int dim) {
  validate(model);
  if (dim < 1) throw ShapeError("kernel_matrix: dim must be positive");
  KernelMatrix k{t, model, dim, Eigen::MatrixXcd(dim, dim)};
  const cplx i(0.0, 1.0);
  if (const auto* m = std::get_if<MeixnerParams>(&model)) {
    if (t == cplx(1.0)) {
      k.entries = series_matrix(columns(model, dim + 400, dim), t);
      return k;
    }
    Eigen::MatrixXcd series;
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b <= a; ++b) {
        double cond = 1.0;
        cplx v = meixner_closed(*m, t, a, b, false, &cond);
        if (cond > kMaxCancellation) {
          if (series.size() == 0) {
            const int n_max = truncated_grid(model, dim - 1, 1e-17).count;
            series = series_matrix(columns(model, n_max, dim), t);
          }
          v = series(a, b);
        }
        k.entries(a, b) = k.entries(b, a) = v;
      }
    }
    return k;
  }
  if (const auto* c = std::get_if<CharlierParams>(&model)) {
    if (t == i) {
      for (int a = 0; a < dim; ++a) {
        for (int b = 0; b <= a; ++b) k.entries(a, b) = k.entries(b, a) = charlier_kernel(c->mu, a, b);
      }
      return k;
    }
    const int n_max = dim + static_cast<int>(4.0 * c->mu + 20.0 * std::sqrt(c->mu + dim)) + 60;
    k.entries = series_matrix(columns(model, n_max, dim), t);
    return k;
  }
  if (const auto* kr = std::get_if<KravchukParams>(&model)) {
    if (dim > kr->N + 1) throw ShapeError("kernel_matrix: dim exceeds N + 1");
    if (t == i) {
      for (int a = 0; a < dim; ++a) {
        for (int b = 0; b <= a; ++b) k.entries(a, b) = k.entries(b, a) = kravchuk_kernel(kr->p, kr->N, a, b);
      }
      return k;
    }
    k.entries = series_matrix(columns(model, kr->N, dim), t);
    return k;
  }
  throw ParameterError("kernel_matrix: " + model_name(model) + " has no lattice kernel");
}

int kernel_support(const MeixnerParams& m, cplx t, int window, double tol) {
  validate(m);
  if (window < 1) throw ShapeError("kernel_support: window must be positive");
  const int row = window - 1;
  const int n_max = truncated_grid(m, row, 1e-17).count + 20;
  double peak = 0.0;
  int quiet = 0;
  for (int x = 0; x < 200000; ++x) {
    double cond = 1.0;
    cplx v = meixner_closed(m, t, row, x, false, &cond);
    if (cond > kMaxCancellation) v = kernel_series(m, t, row, x, n_max).value;
    const double mag = std::abs(v);
    peak = std::max(peak, mag);
    quiet = (x > row && mag < tol * std::max(peak, 1.0)) ? quiet + 1 : 0;
    if (quiet == 20) return std::max(x - 19, window);
  }
  throw TruncationError("kernel_support: kernel row does not decay");
}

double composition_defect(const KernelMatrix& a, const KernelMatrix& b, const KernelMatrix& c, int window) {
  if (a.dim != b.dim || a.dim != c.dim) throw ShapeError("composition_defect: dimensions differ");
  if (window < 1 || window > a.dim) throw ShapeError("composition_defect: window out of range");
  const Eigen::MatrixXcd ab = a.entries.topRows(window) * b.entries.leftCols(window);
  return (ab - c.entries.topLeftCorner(window, window)).cwiseAbs().maxCoeff();
}

double unitarity_defect(const KernelMatrix& k, int window) {
  if (window < 1 || window > k.dim) throw ShapeError("unitarity_defect: window out of range");
  const Eigen::MatrixXcd top = k.entries.topRows(window);
  const Eigen::MatrixXcd kk = top * top.adjoint();
  return (kk - Eigen::MatrixXcd::Identity(window, window)).cwiseAbs().maxCoeff();
}

double reproduction_defect(const KernelMatrix& k, int n_max, int window) {
  if (window < 1 || window > k.dim) throw ShapeError("reproduction_defect: window out of range");
  const Eigen::MatrixXd P = columns(k.model, n_max, k.dim);
  double worst = 0.0;
  cplx tn = 1.0;
  for (int n = 0; n <= n_max; ++n, tn *= k.t) {
    const Eigen::VectorXcd psi = P.row(n).transpose().cast<cplx>();
    const Eigen::VectorXcd r = k.entries.topRows(window) * psi - tn * psi.head(window);
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

void write_kernel_csv(std::ostream& out, const KernelMatrix& k) {
  write_csv_row(out, {"xi", "xi_prime", "re", "im"});
  for (int a = 0; a < k.dim; ++a) {
    for (int b = 0; b < k.dim; ++b) {
      write_csv_row(out, {std::to_string(a), std::to_string(b), csv_number(k.entries(a, b).real()),
                          csv_number(k.entries(a, b).imag())});
    }
  }
}

}  // namespace dosc
