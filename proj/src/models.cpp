#include "dosc/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "dosc/csv.hpp"
#include "dosc/errors.hpp"
#include "dosc/polynomials.hpp"

namespace dosc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPi = std::numbers::pi;
constexpr double kRescale = 1e100;
const double kLogRescale = std::log(kRescale);

bool is_integer(double x) { return std::floor(x) == x; }

int to_lattice(double x, const char* what) {
  if (!is_integer(x) || x < 0.0) {
    throw DomainError(std::string(what) + ": point " + std::to_string(x) + " is not on the lattice");
  }
  return static_cast<int>(x);
}

// Three-term recurrence of the normalized functions in Jacobi form,
//   b(n) psi_{n+1} = (x - a(n)) psi_n - b(n-1) psi_{n-1}.
struct Jacobi {
  const ModelParams* model;

  double a(int n) const {
    return std::visit(overloaded{[](const HermiteParams&) { return 0.0; },
                                 [&](const CharlierParams& c) { return n + c.mu; },
                                 [&](const KravchukParams& k) {
                                   return k.p * (k.N - n) + n * (1.0 - k.p);
                                 },
                                 [&](const MeixnerParams& m) {
                                   return (n + (n + m.beta) * m.gamma) / (1.0 - m.gamma);
                                 },
                                 [](const MeixnerPollaczekParams&) { return 0.0; }},
                      *model);
  }

  double b(int n) const {
    if (n < 0) return 0.0;
    return std::visit(
        overloaded{[&](const HermiteParams&) { return std::sqrt(0.5 * (n + 1.0)); },
                   [&](const CharlierParams& c) { return std::sqrt(c.mu * (n + 1.0)); },
                   [&](const KravchukParams& k) {
                     return std::sqrt(k.p * (1.0 - k.p) * (n + 1.0) * (k.N - n));
                   },
                   [&](const MeixnerParams& m) {
                     return std::sqrt(m.gamma * (n + 1.0) * (n + m.beta)) / (1.0 - m.gamma);
                   },
                   [](const MeixnerPollaczekParams&) { return 0.0; }},
        *model);
  }
};

// Values held as mantissa * exp(log_scale) so the recurrences survive weights
// far outside double range.
struct Scaled {
  double mantissa;
  double log_scale;

  double value(double log_seed) const {
    if (mantissa == 0.0) return 0.0;
    return std::copysign(std::exp(std::log(std::abs(mantissa)) + log_scale + log_seed), mantissa);
  }
};

// psi_0..psi_n at x by the upward recurrence, starting from psi_0 = 1 (the
// caller supplies log psi_0 separately).
std::vector<Scaled> forward(const Jacobi& J, double x, int n) {
  std::vector<Scaled> out;
  out.reserve(std::size_t(n) + 1);
  double prev = 0.0;
  double cur = 1.0;
  double scale = 0.0;
  out.push_back({cur, scale});
  for (int k = 0; k < n; ++k) {
    const double next = ((x - J.a(k)) * cur - J.b(k - 1) * prev) / J.b(k);
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      scale += kLogRescale;
    }
    out.push_back({cur, scale});
  }
  return out;
}

// psi_N..psi_m at x by the downward recurrence from psi_N = 1 (relative to
// the seed). Entry i holds degree N - i.
std::vector<Scaled> backward(const Jacobi& J, double x, int N, int m) {
  std::vector<Scaled> out;
  double next = 0.0;
  double cur = 1.0;
  double scale = 0.0;
  out.push_back({cur, scale});
  for (int k = N; k > m; --k) {
    const double prev = ((x - J.a(k)) * cur - J.b(k) * next) / J.b(k - 1);
    next = cur;
    cur = prev;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      next /= kRescale;
      scale += kLogRescale;
    }
    out.push_back({cur, scale});
  }
  return out;
}

double log_psi0(const ModelParams& model, double x) {
  return std::visit(
      overloaded{[&](const HermiteParams&) { return -0.25 * std::log(kPi) - 0.5 * x * x; },
                 [&](const MeixnerParams& m) {
                   return 0.5 * (weight(model, x).log_magnitude + m.beta * std::log1p(-m.gamma));
                 },
                 [&](const auto&) { return 0.5 * weight(model, x).log_magnitude; }},
      model);
}

// Highest Kravchuk degree at point j still inside the oscillatory band of
// the degree recurrence. Upward recursion is stable to there, downward from
// N is stable above it.
int kravchuk_top(const KravchukParams& k, const Jacobi& J, int j) {
  int top = -1;
  int best = 0;
  double best_margin = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= k.N; ++m) {
    const double d = J.a(m) - j;
    const double bb = std::max(J.b(m), J.b(m - 1));
    const double margin = d * d - 4.0 * bb * bb;
    if (margin <= 0.0) top = m;
    if (margin < best_margin) {
      best_margin = margin;
      best = m;
    }
  }
  return top >= 0 ? top : best;
}

// log |psi_N(j)| and its sign for Kravchuk.
std::pair<double, int> kravchuk_last(const KravchukParams& k, int j) {
  const double q = 1.0 - k.p;
  const double lm = 0.5 * log_binomial(k.N, j) + 0.5 * (k.N - j) * std::log(k.p) + 0.5 * j * std::log(q);
  return {lm, ((k.N + j) % 2 == 0) ? 1 : -1};
}

std::vector<double> kravchuk_column(const KravchukParams& k, const ModelParams& model, int j,
                                    int n_max) {
  const Jacobi J{&model};
  const int top = std::min(kravchuk_top(k, J, j), n_max);
  std::vector<double> col(std::size_t(n_max) + 1, 0.0);
  const double seed = log_psi0(model, j);
  const auto up = forward(J, j, top);
  for (int n = 0; n <= top; ++n) col[std::size_t(n)] = up[std::size_t(n)].value(seed);
  if (n_max > top) {
    const auto [lm, sign] = kravchuk_last(k, j);
    const auto down = backward(J, j, k.N, top);
    for (int n = top + 1; n <= n_max; ++n) {
      col[std::size_t(n)] = sign * down[std::size_t(k.N - n)].value(lm);
    }
  }
  return col;
}

// psi_n(x) for Charlier or Meixner at lattice point x, upward in degree for
// n <= x and through self-duality psi_n(x) = (-1)^{n+x} psi_x(n) otherwise.
double selfdual_single(const ModelParams& model, int n, int x) {
  const Jacobi J{&model};
  if (n <= x) return forward(J, x, n).back().value(log_psi0(model, x));
  const double v = forward(J, n, x).back().value(log_psi0(model, n));
  return ((n + x) % 2 == 0) ? v : -v;
}

std::vector<double> selfdual_column(const ModelParams& model, int x, int n_max) {
  const Jacobi J{&model};
  const int top = std::min(x, n_max);
  std::vector<double> col(std::size_t(n_max) + 1, 0.0);
  const double seed = log_psi0(model, x);
  const auto up = forward(J, x, top);
  for (int n = 0; n <= top; ++n) col[std::size_t(n)] = up[std::size_t(n)].value(seed);
  for (int n = top + 1; n <= n_max; ++n) col[std::size_t(n)] = selfdual_single(model, n, x);
  return col;
}

double mp_wavefunction(const MeixnerPollaczekParams& mp, int n, double x) {
  const ModelParams model = mp;
  const LogWeight w = weight(model, x);
  const LogWeight h = square_norm(model, n);
  const double p = std::real(poly_eval(PolyFamily{mp}, n, cplx(x)));
  return p * std::exp(0.5 * (w.log_magnitude - h.log_magnitude));
}

constexpr double kHermiteSpacing = 0.1;

}  // namespace

int Grid::index_of(double xv) const {
  const double r = (xv - x_start) / x_step;
  const double ri = std::round(r);
  if (std::abs(r - ri) > 1e-9 || ri < 0.0 || ri >= count) return -1;
  return static_cast<int>(ri);
}

Grid lattice_grid(const ModelParams& model, int count) {
  validate(model);
  Grid g;
  g.model = model;
  std::visit(overloaded{[&](const CharlierParams& c) {
                          g.step = 1.0 / std::sqrt(2.0 * c.mu);
                          g.offset = -c.mu * g.step;
                          g.count = count;
                        },
                        [&](const KravchukParams& k) {
                          g.step = std::sqrt(2.0 * k.N * k.p * (1.0 - k.p));
                          g.offset = -k.p * k.N * g.step;
                          g.count = k.N + 1;
                          g.finite = true;
                        },
                        [&](const MeixnerParams&) { g.count = count; },
                        [&](const auto&) {
                          throw ParameterError("lattice_grid: " + model_name(model) +
                                               " has no lattice");
                        }},
             model);
  if (g.count < 1) throw ParameterError("grid needs at least one point");
  g.truncation_index = g.count;
  return g;
}

Grid sampled_grid(const ModelParams& model, double half_width, double spacing) {
  if (!(half_width > 0.0) || !(spacing > 0.0)) {
    throw ParameterError("sampled grid needs positive half width and spacing");
  }
  Grid g;
  g.model = model;
  const int half = static_cast<int>(std::ceil(half_width / spacing));
  g.x_start = -half * spacing;
  g.x_step = spacing;
  g.count = 2 * half + 1;
  g.truncation_index = g.count;
  g.measure = spacing;
  return g;
}

Grid half_step_grid(const Grid& native) {
  if (!std::holds_alternative<MeixnerParams>(native.model)) {
    throw GridError("half-step grid is defined for the Meixner model only");
  }
  Grid g = native;
  g.x_start = -0.5;
  g.x_step = 0.5;
  g.count = 2 * native.count;
  g.truncation_index = g.count;
  return g;
}

LogWeight weight(const ModelParams& model, double x) {
  validate(model);
  return std::visit(
      overloaded{
          [&](const HermiteParams&) { return LogWeight{-x * x, 1}; },
          [&](const CharlierParams& c) {
            const int k = to_lattice(x, "Charlier weight");
            return LogWeight{-c.mu + k * std::log(c.mu) - log_factorial(k), 1};
          },
          [&](const KravchukParams& kp) {
            if (!is_integer(x) || x < 0.0 || x > kp.N) {
              throw DomainError("Kravchuk weight: x must be an integer in [0, N]");
            }
            const double q = 1.0 - kp.p;
            return LogWeight{log_binomial(kp.N, x) + x * std::log(kp.p) + (kp.N - x) * std::log(q), 1};
          },
          [&](const MeixnerParams& m) {
            if (is_integer(x) && x >= 0.0) {
              const int k = static_cast<int>(x);
              return LogWeight{log_pochhammer(m.beta, k).log_magnitude + k * std::log(m.gamma) -
                                   log_factorial(k),
                               1};
            }
            if (!(x > -1.0) || !(x + m.beta > 0.0)) {
              throw DomainError("Meixner weight: x must exceed max(-1, -beta)");
            }
            return LogWeight{log_gamma(m.beta + x) - log_gamma(m.beta) + x * std::log(m.gamma) -
                                 log_gamma(x + 1.0),
                             1};
          },
          [&](const MeixnerPollaczekParams& mp) {
            const double lg = log_gamma_complex(cplx(mp.lambda, x)).real();
            return LogWeight{2.0 * mp.lambda * std::log(2.0 * std::sin(mp.phi)) +
                                 (2.0 * mp.phi - kPi) * x + 2.0 * lg - std::log(2.0 * kPi),
                             1};
          }},
      model);
}

LogWeight square_norm(const ModelParams& model, int n) {
  validate(model);
  if (n < 0) throw DomainError("square_norm: negative degree");
  return std::visit(
      overloaded{
          [&](const HermiteParams&) {
            return LogWeight{0.5 * std::log(kPi) + n * std::log(2.0) + log_factorial(n), 1};
          },
          [&](const CharlierParams& c) {
            return LogWeight{log_factorial(n) - n * std::log(c.mu), 1};
          },
          [&](const KravchukParams& k) {
            if (n > k.N) throw DegreeError("Kravchuk degree exceeds N");
            const double q = 1.0 - k.p;
            return LogWeight{n * (std::log(q) - std::log(k.p)) - log_binomial(k.N, n), 1};
          },
          [&](const MeixnerParams& m) {
            return LogWeight{log_factorial(n) - n * std::log(m.gamma) -
                                 log_pochhammer(m.beta, n).log_magnitude -
                                 m.beta * std::log1p(-m.gamma),
                             1};
          },
          [&](const MeixnerPollaczekParams& mp) {
            return LogWeight{log_gamma(2.0 * mp.lambda + n) - log_factorial(n), 1};
          }},
      model);
}

double wavefunction(const ModelParams& model, int n, double x) {
  validate(model);
  if (n < 0) throw DomainError("wavefunction: negative degree");
  return std::visit(
      overloaded{
          [&](const HermiteParams&) {
            const Jacobi J{&model};
            return forward(J, x, n).back().value(log_psi0(model, x));
          },
          [&](const KravchukParams& k) {
            if (n > k.N) throw DegreeError("Kravchuk degree exceeds N");
            if (!is_integer(x) || x < 0.0 || x > k.N) {
              throw DomainError("Kravchuk wavefunction: x must be an integer in [0, N]");
            }
            const int j = static_cast<int>(x);
            const Jacobi J{&model};
            const int top = kravchuk_top(k, J, j);
            if (n <= top) return forward(J, j, n).back().value(log_psi0(model, j));
            const auto [lm, sign] = kravchuk_last(k, j);
            return sign * backward(J, j, k.N, n).back().value(lm);
          },
          [&](const MeixnerPollaczekParams& mp) { return mp_wavefunction(mp, n, x); },
          [&](const auto&) { return selfdual_single(model, n, to_lattice(x, "wavefunction")); }},
      model);
}

double meixner_wavefunction_extended(const MeixnerParams& m, int n, double x) {
  const ModelParams model = m;
  validate(model);
  if (is_integer(x) && x >= 0.0) return wavefunction(model, n, x);
  const double seed = log_psi0(model, x);
  if (n <= x + 1.0) {
    const Jacobi J{&model};
    return forward(J, x, n).back().value(seed);
  }
  // Small argument: the series has no cancellation to speak of and the
  // upward recursion would chase a decaying solution.
  const double poly = std::real(meixner_series(n, cplx(x), m.beta, m.gamma));
  const double norm = square_norm(model, n).log_magnitude + m.beta * std::log1p(-m.gamma);
  const double v = poly * std::exp(seed - 0.5 * norm);
  return (n % 2 == 0) ? v : -v;
}

std::vector<double> wavefunction_column(const ModelParams& model, double x, int n_max) {
  validate(model);
  if (n_max < 0) throw DomainError("wavefunction_column: negative n_max");
  return std::visit(
      overloaded{[&](const HermiteParams&) {
                   const Jacobi J{&model};
                   const double seed = log_psi0(model, x);
                   const auto up = forward(J, x, n_max);
                   std::vector<double> col;
                   col.reserve(up.size());
                   for (const auto& s : up) col.push_back(s.value(seed));
                   return col;
                 },
                 [&](const KravchukParams& k) {
                   if (n_max > k.N) throw DegreeError("Kravchuk degree exceeds N");
                   if (!is_integer(x) || x < 0.0 || x > k.N) {
                     throw DomainError("Kravchuk wavefunction: x must be an integer in [0, N]");
                   }
                   return kravchuk_column(k, model, static_cast<int>(x), n_max);
                 },
                 [&](const MeixnerPollaczekParams& mp) {
                   std::vector<double> col;
                   for (int n = 0; n <= n_max; ++n) col.push_back(mp_wavefunction(mp, n, x));
                   return col;
                 },
                 [&](const auto&) {
                   return selfdual_column(model, to_lattice(x, "wavefunction"), n_max);
                 }},
      model);
}

Grid truncated_grid(const ModelParams& model, int n_max, double tail_tol, int max_points) {
  validate(model);
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  if (!(tail_tol > 0.0)) throw ParameterError("tail_tol must be positive");
  auto budget_error = [&](int needed) {
    return TruncationError("tail_tol " + std::to_string(tail_tol) + " needs more than " +
                           std::to_string(needed) + " grid points (max_points = " +
                           std::to_string(max_points) + ")");
  };

  if (std::holds_alternative<KravchukParams>(model)) return lattice_grid(model, 0);

  if (std::holds_alternative<HermiteParams>(model)) {
    // psi_n^2 <= C xi^{2n} e^{-xi^2} past the turning point sqrt(2n+1)
    double L = std::sqrt(2.0 * n_max + 1.0) + 1.0;
    for (;; L += 0.5) {
      const auto col = wavefunction_column(model, L, n_max);
      double s = 0.0;
      for (double v : col) s += v * v;
      if (s * L < tail_tol) break;
      if (2.0 * L / kHermiteSpacing > max_points) throw budget_error(max_points);
    }
    return sampled_grid(model, L, kHermiteSpacing);
  }

  if (!std::holds_alternative<CharlierParams>(model) && !std::holds_alternative<MeixnerParams>(model)) {
    throw ParameterError("truncated_grid: " + model_name(model) + " has no lattice");
  }

  const Jacobi J{&model};
  const double turning = J.a(n_max) + 2.0 * J.b(n_max) + 1.0;
  const double asymptotic = std::holds_alternative<MeixnerParams>(model)
                                ? std::get<MeixnerParams>(model).gamma
                                : 0.0;
  double prev = -1.0;
  for (int x = 0; x < max_points; ++x) {
    const auto col = wavefunction_column(model, x, n_max);
    double s = 0.0;
    for (double v : col) s = std::max(s, v * v);
    if (x > turning && prev > 0.0) {
      const double r = std::max(s / prev, asymptotic);
      if (r < 1.0 && (n_max + 1.0) * s * r / (1.0 - r) < tail_tol) {
        Grid g = lattice_grid(model, x + 1);
        return g;
      }
    }
    prev = s;
  }
  throw budget_error(max_points);
}

WaveTable build_wavetable(const Grid& grid, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  WaveTable t;
  t.params = grid.model;
  t.grid = grid;
  t.n_max = n_max;
  t.values.resize(n_max + 1, grid.count);
  const bool selfdual = (std::holds_alternative<MeixnerParams>(grid.model) ||
                         std::holds_alternative<CharlierParams>(grid.model)) &&
                        grid.x_step == 1.0 && grid.x_start == 0.0;
  if (selfdual) {
    // n <= x from the column at x, n > x from the column at n through self-duality
    const Jacobi J{&grid.model};
    for (int x = 0; x < grid.count; ++x) {
      const int top = std::min(x, n_max);
      const auto up = forward(J, x, top);
      const double seed = log_psi0(grid.model, x);
      for (int n = 0; n <= top; ++n) t.values(n, x) = up[std::size_t(n)].value(seed);
    }
    for (int n = 1; n <= n_max; ++n) {
      const int top = std::min(n - 1, grid.count - 1);
      if (top < 0) continue;
      const auto up = forward(J, n, top);
      const double seed = log_psi0(grid.model, n);
      for (int x = 0; x <= top; ++x) {
        const double v = up[std::size_t(x)].value(seed);
        t.values(n, x) = ((n + x) % 2 == 0) ? v : -v;
      }
    }
    return t;
  }
  const bool half = std::holds_alternative<MeixnerParams>(grid.model) && grid.x_step != 1.0;
  for (int i = 0; i < grid.count; ++i) {
    const double x = grid.x(i);
    if (half) {
      const auto& m = std::get<MeixnerParams>(grid.model);
      for (int n = 0; n <= n_max; ++n) t.values(n, i) = meixner_wavefunction_extended(m, n, x);
    } else {
      const auto col = wavefunction_column(grid.model, x, n_max);
      for (int n = 0; n <= n_max; ++n) t.values(n, i) = col[std::size_t(n)];
    }
  }
  return t;
}

WaveTable build_wavetable(const ModelParams& model, int n_max, double tail_tol, int max_points) {
  return build_wavetable(truncated_grid(model, n_max, tail_tol, max_points), n_max);
}

OrthogonalityDefect orthogonality_defect(const WaveTable& table) {
  OrthogonalityDefect d;
  const Eigen::MatrixXd& V = table.values;
  const Eigen::MatrixXd gram = table.grid.measure * (V * V.transpose());
  d.primal = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (table.grid.finite && V.rows() == V.cols()) {
    const Eigen::MatrixXd dual = V.transpose() * V;
    d.dual = (dual - Eigen::MatrixXd::Identity(dual.rows(), dual.cols())).cwiseAbs().maxCoeff();
  }
  return d;
}

double dual_defect(const ModelParams& model, int window, int n_dual) {
  if (window < 1 || n_dual < 0) throw ParameterError("dual_defect: empty window");
  Eigen::MatrixXd V(n_dual + 1, window);
  for (int x = 0; x < window; ++x) {
    const auto col = wavefunction_column(model, x, n_dual);
    for (int n = 0; n <= n_dual; ++n) V(n, x) = col[std::size_t(n)];
  }
  const Eigen::MatrixXd dual = V.transpose() * V;
  return (dual - Eigen::MatrixXd::Identity(window, window)).cwiseAbs().maxCoeff();
}

double coulomb_radial(int n, int l, double x) {
  if (n < 0 || l < 0) throw DomainError("coulomb_radial: negative index");
  if (x < 0.0) throw DomainError("coulomb_radial: x must be nonnegative");
  if (x == 0.0 && l > 0) return 0.0;
  const double lag = poly_value(LaguerreParams{2.0 * l + 1.0}, n, x);
  if (lag == 0.0) return 0.0;
  const double lm = 0.5 * (log_factorial(n) - log_factorial(n + 2 * l + 1)) +
                    (l > 0 ? l * std::log(x) : 0.0) - 0.5 * x + std::log(std::abs(lag));
  const double v = std::copysign(std::exp(lm), lag);
  return (n % 2 == 0) ? v : -v;
}

double mp_orthogonality_defect(double lambda, double phi, int n_max, const QuadratureSpec& quad) {
  const MeixnerPollaczekParams mp{lambda, phi};
  const ModelParams model = mp;
  validate(model);
  if (n_max < 0) throw DomainError("n_max must be nonnegative");

  // integrand envelope rho(x) (1 + x^2)^{n_max}, scanned outward from the peak region
  auto envelope = [&](double x) {
    return weight(model, x).log_magnitude + n_max * std::log1p(x * x);
  };
  double peak = -std::numeric_limits<double>::infinity();
  for (double x = -20.0; x <= 20.0; x += 0.5) peak = std::max(peak, envelope(x));
  const double cut = peak + std::log(quad.tail_tol);
  double lo = 0.0;
  double hi = 0.0;
  while (envelope(lo) > cut || envelope(lo - 1.0) > cut) lo -= 1.0;
  while (envelope(hi) > cut || envelope(hi + 1.0) > cut) hi += 1.0;
  const double L = std::max(-lo, hi) + 1.0;

  std::vector<double> lognorm;
  for (int n = 0; n <= n_max; ++n) lognorm.push_back(square_norm(model, n).log_magnitude);

  auto gram = [&](double h) {
    const int m = static_cast<int>(std::ceil(L / h));
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    Eigen::VectorXd p(n_max + 1);
    for (int i = -m; i <= m; ++i) {
      const double x = i * h;
      const double w = std::exp(weight(model, x).log_magnitude);
      for (int n = 0; n <= n_max; ++n) p(n) = std::real(poly_eval(PolyFamily{mp}, n, cplx(x)));
      const double end = (i == -m || i == m) ? 0.5 : 1.0;
      G += (end * h * w) * (p * p.transpose());
    }
    for (int a = 0; a <= n_max; ++a) {
      for (int b = 0; b <= n_max; ++b) G(a, b) *= std::exp(-0.5 * (lognorm[a] + lognorm[b]));
    }
    return G;
  };

  double h = quad.step;
  Eigen::MatrixXd G = gram(h);
  double change = std::numeric_limits<double>::infinity();
  for (int r = 0; r < quad.max_refinements; ++r) {
    h *= 0.5;
    const Eigen::MatrixXd G2 = gram(h);
    change = (G2 - G).cwiseAbs().maxCoeff();
    G = G2;
    if (change < quad.convergence_tol) {
      return (G - Eigen::MatrixXd::Identity(n_max + 1, n_max + 1)).cwiseAbs().maxCoeff();
    }
  }
  throw NumericalError("Meixner-Pollaczek quadrature did not converge: last change " +
                       std::to_string(change) + " at step " + std::to_string(h) + ", L = " +
                       std::to_string(L));
}

double default_tail_tol() {
  if (const char* env = std::getenv("DOSC_TAIL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-14;
}

void write_wavetable_csv(std::ostream& out, const WaveTable& t) {
  out << "xi";
  for (int n = 0; n <= t.n_max; ++n) out << ",psi" << n;
  out << '\n';
  for (int i = 0; i < t.grid.count; ++i) {
    out << csv_number(t.grid.x(i));
    for (int n = 0; n <= t.n_max; ++n) out << ',' << csv_number(t.values(n, i));
    out << '\n';
  }
}

}  // namespace dosc
