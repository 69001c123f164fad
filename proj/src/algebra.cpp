#include "dosc/algebra.hpp"

#include <cmath>
#include <vector>

#include "dosc/errors.hpp"
#include "dosc/polynomials.hpp"

namespace dosc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr int kGuardBand = 20;

// out(x) = lo f(x-1) + diag f(x) + up f(x+1)
struct Stencil {
  cplx lo, diag, up;
};

ParameterError not_carried(Op op, const ModelParams& model) {
  return ParameterError("operator " + op_name(op) + " is not defined for the " + model_name(model) +
                        " model");
}

Stencil meixner_stencil(Op op, const MeixnerParams& m, double x) {
  const double g = m.gamma;
  const double sg = std::sqrt(g);
  const double mu_up = std::sqrt((x + 1.0) * (x + m.beta));
  const double mu_lo = std::sqrt(x * (x + m.beta - 1.0));
  const double centre = x + 0.5 * m.beta;
  const cplx i(0.0, 1.0);
  switch (op) {
    case Op::H:
    case Op::K0:
      return {-sg / (1.0 - g) * mu_lo, (1.0 + g) / (1.0 - g) * centre, -sg / (1.0 - g) * mu_up};
    case Op::Kplus:
      return {mu_lo / (1.0 - g), -2.0 * sg / (1.0 - g) * centre, g / (1.0 - g) * mu_up};
    case Op::Kminus:
      return {g / (1.0 - g) * mu_lo, -2.0 * sg / (1.0 - g) * centre, mu_up / (1.0 - g)};
    case Op::K1:
      return {-0.5 * i * mu_lo, 0.0, 0.5 * i * mu_up};
    case Op::K2: {
      const double c = -(1.0 + g) / (2.0 * (1.0 - g));
      return {c * mu_lo, 2.0 * sg / (1.0 - g) * centre, c * mu_up};
    }
    case Op::C:
      return {-mu_lo, (x + 1.0) / sg, 0.0};
    case Op::Cplus:
      return {0.0, (x + 1.0) / sg, -mu_up};
    default:
      throw not_carried(op, m);
  }
}

Stencil charlier_stencil(Op op, const CharlierParams& c, double k) {
  const double sm = std::sqrt(c.mu);
  switch (op) {
    case Op::H:
      return {-std::sqrt(c.mu * k), k + c.mu + 0.5, -std::sqrt(c.mu * (k + 1.0))};
    case Op::b:
      return {0.0, -sm, std::sqrt(k + 1.0)};
    case Op::bplus:
      return {std::sqrt(k), -sm, 0.0};
    default:
      throw not_carried(op, c);
  }
}

Stencil kravchuk_stencil(Op op, const KravchukParams& kp, double j) {
  const double p = kp.p;
  const double q = 1.0 - p;
  const double spq = std::sqrt(p * q);
  const double al_up = std::sqrt((kp.N - j) * (j + 1.0));
  const double al_lo = std::sqrt((kp.N - j + 1.0) * j);
  const double h_diag = p * kp.N + (1.0 - 2.0 * p) * j + 0.5;
  switch (op) {
    case Op::H:
      return {-spq * al_lo, h_diag, -spq * al_up};
    case Op::A0:
      return {-spq * al_lo, h_diag - 0.5 * (kp.N + 1.0), -spq * al_up};
    case Op::A:
      return {-p * al_lo, spq * (2.0 * j - kp.N), q * al_up};
    case Op::Aplus:
      return {q * al_lo, spq * (2.0 * j - kp.N), -p * al_up};
    default:
      throw not_carried(op, kp);
  }
}

Stencil stencil(Op op, const ModelParams& model, double x) {
  return std::visit(overloaded{[&](const MeixnerParams& m) { return meixner_stencil(op, m, x); },
                               [&](const CharlierParams& c) { return charlier_stencil(op, c, x); },
                               [&](const KravchukParams& k) { return kravchuk_stencil(op, k, x); },
                               [&](const auto&) -> Stencil { throw not_carried(op, model); }},
                    model);
}

void require_shape(const Grid& grid, Eigen::Index n) {
  if (n != grid.count) {
    throw ShapeError("grid function has " + std::to_string(n) + " values, grid has " +
                     std::to_string(grid.count));
  }
}

Eigen::VectorXcd apply_half_step(Op op, const Grid& grid, const Eigen::VectorXcd& f) {
  const auto* m = std::get_if<MeixnerParams>(&grid.model);
  if (!m) throw not_carried(op, grid.model);
  if (grid.x_step != 0.5 || grid.x_start != -0.5) {
    throw GridError(op_name(op) + " needs the half-step grid");
  }
  if (m->beta < 1.0) throw ParameterError(op_name(op) + " needs beta >= 1");
  require_shape(grid, f.size());
  const double c = 1.0 / std::sqrt(1.0 - m->gamma);
  const int n = grid.count;
  auto at = [&](int i) { return (i >= 0 && i < n) ? f(i) : cplx(0.0); };
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.x(i);
    if (op == Op::B) {
      if (x < 0.0) continue;
      out(i) = c * (std::sqrt(x + 1.0) * at(i + 1) -
                    std::sqrt(m->gamma * (x + m->beta - 1.0)) * at(i - 1));
    } else {
      out(i) = c * (std::sqrt(x + 0.5) * at(i - 1) -
                    std::sqrt(m->gamma * (x + m->beta - 0.5)) * at(i + 1));
    }
  }
  return out;
}

}  // namespace

std::string op_name(Op op) {
  static constexpr const char* names[] = {"H",  "K0", "K+", "K-", "K1", "K2", "C",  "C+", "B",
                                          "B+", "b",  "b+", "A",  "A+", "A0", "a",  "a+"};
  return names[static_cast<int>(op)];
}

IntertwinerSpec make_intertwiner_spec(double beta, double gamma, double gamma_prime) {
  validate(MeixnerParams{beta, gamma});
  validate(MeixnerParams{beta, gamma_prime});
  IntertwinerSpec s;
  s.beta = beta;
  s.gamma = gamma;
  s.gamma_prime = gamma_prime;
  s.theta = 2.0 * std::atanh(std::sqrt(gamma));
  s.theta_prime = 2.0 * std::atanh(std::sqrt(gamma_prime));
  s.delta = s.theta_prime - s.theta;
  return s;
}

Eigen::VectorXcd apply_ladder(Op op, const Grid& grid, const Eigen::VectorXcd& f) {
  validate(grid.model);
  if (op == Op::B || op == Op::Bplus) return apply_half_step(op, grid, f);
  if (grid.x_step != 1.0) throw GridError(op_name(op) + " acts on the native lattice grid");
  require_shape(grid, f.size());
  const int n = grid.count;
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) {
    const Stencil s = stencil(op, grid.model, grid.x(i));
    cplx v = s.diag * f(i);
    if (i > 0) v += s.lo * f(i - 1);
    if (i + 1 < n) v += s.up * f(i + 1);
    out(i) = v;
  }
  return out;
}

Eigen::VectorXcd apply_ladder(Op op, const Grid& grid, const Eigen::VectorXd& f) {
  return apply_ladder(op, grid, Eigen::VectorXcd(f.cast<cplx>()));
}

Eigen::VectorXd apply_hamiltonian(const Grid& grid, const Eigen::VectorXd& f) {
  return apply_ladder(Op::H, grid, f).real();
}

Grid operator_grid(const ModelParams& model, int n_max, double tail_tol) {
  Grid g = truncated_grid(model, n_max, tail_tol);
  if (g.finite) return g;
  if (g.x_step != 1.0 || g.measure != 1.0) {
    throw ParameterError("operator_grid: " + model_name(model) + " has no lattice");
  }
  g = lattice_grid(model, g.count + kGuardBand);
  g.truncation_index = g.count - kGuardBand;
  return g;
}

BasisOperator operator_matrix(Op op, const ModelParams& model, Basis basis, int dim,
                              double tail_tol) {
  validate(model);
  if (dim < 1) throw ShapeError("operator_matrix: dim must be positive");
  BasisOperator out;
  out.basis = basis;
  out.dim = dim;
  out.label = op_name(op);

  if (op == Op::a || op == Op::aplus) {
    if (!std::holds_alternative<HermiteParams>(model)) throw not_carried(op, model);
    if (basis != Basis::Number) throw ParameterError("a, a+ are represented in the number basis only");
    out.entries = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
      if (op == Op::a) {
        out.entries(n - 1, n) = std::sqrt(double(n));
      } else {
        out.entries(n, n - 1) = std::sqrt(double(n));
      }
    }
    out.exact = true;
    return out;
  }
  if (op == Op::B || op == Op::Bplus) {
    throw GridError("B, B+ map between the integer and half-integer grids and have no square matrix");
  }

  if (basis == Basis::Grid) {
    const Grid g = std::holds_alternative<KravchukParams>(model) ? lattice_grid(model, 0)
                                                                 : lattice_grid(model, dim);
    if (dim > g.count) throw ShapeError("operator_matrix: dim exceeds the finite grid");
    out.entries = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const Stencil s = stencil(op, model, g.x(i));
      out.entries(i, i) = s.diag;
      if (i > 0) out.entries(i, i - 1) = s.lo;
      if (i + 1 < dim) out.entries(i, i + 1) = s.up;
    }
    out.exact = g.finite && dim == g.count;
    return out;
  }

  const Grid g = operator_grid(model, dim - 1, tail_tol);
  if (g.finite && dim > g.count) throw ShapeError("operator_matrix: dim exceeds N + 1");
  const WaveTable t = build_wavetable(g, dim - 1);
  Eigen::MatrixXcd W(dim, g.count);
  for (int n = 0; n < dim; ++n) {
    W.row(n) = apply_ladder(op, g, Eigen::VectorXd(t.values.row(n).transpose())).transpose();
  }
  out.entries = t.values.cast<cplx>() * W.transpose();
  out.exact = g.finite;

  if (const auto* m = std::get_if<MeixnerParams>(&model); m && (op == Op::Kplus || op == Op::Kminus)) {
    for (int n = 0; n + 1 < dim; ++n) {
      const double kappa = std::sqrt((n + 1.0) * (n + m->beta));
      const cplx e = (op == Op::Kplus) ? out.entries(n + 1, n) : out.entries(n, n + 1);
      if (std::abs(e - kappa) > 1e-6) {
        throw TruncationError("ladder entry " + std::to_string(n + 1) + " deviates from kappa by " +
                              std::to_string(std::abs(e - kappa)) + "; grid truncation too coarse");
      }
    }
  }
  return out;
}

double commutator_defect(const BasisOperator& X, const BasisOperator& Y,
                         const BasisOperator& Z_expected, int window) {
  if (X.basis != Y.basis || X.basis != Z_expected.basis) {
    throw BasisMismatch("commutator_defect: operands live in different bases");
  }
  if (X.dim != Y.dim || X.dim != Z_expected.dim) throw ShapeError("commutator_defect: dim mismatch");
  const bool exact = X.exact && Y.exact && Z_expected.exact;
  if (window < 1 || window > X.dim || (!exact && window >= X.dim - 2)) {
    throw ShapeError("commutator_defect: window " + std::to_string(window) + " invalid for dim " +
                     std::to_string(X.dim));
  }
  const Eigen::MatrixXcd c = X.entries * Y.entries - Y.entries * X.entries - Z_expected.entries;
  return c.topLeftCorner(window, window).cwiseAbs().maxCoeff();
}

double casimir_defect(const MeixnerParams& m, int dim, int window) {
  if (window < 1 || window >= dim - 2) throw ShapeError("casimir_defect: window must stay below dim - 2");
  const auto K0 = operator_matrix(Op::K0, m, Basis::Number, dim).entries;
  const auto Kp = operator_matrix(Op::Kplus, m, Basis::Number, dim).entries;
  const auto Km = operator_matrix(Op::Kminus, m, Basis::Number, dim).entries;
  const double c = 0.5 * m.beta * (0.5 * m.beta - 1.0);
  const Eigen::MatrixXcd cas = K0 * K0 - K0 - Kp * Km - c * Eigen::MatrixXcd::Identity(dim, dim);
  return cas.topLeftCorner(window, window).cwiseAbs().maxCoeff();
}

BasisOperator intertwiner_matrix(const IntertwinerSpec& spec, int dim) {
  validate(MeixnerParams{spec.beta, spec.gamma});
  validate(MeixnerParams{spec.beta, spec.gamma_prime});
  const double s = std::tanh(0.5 * spec.delta);
  const double s2m1 = s * s - 1.0;
  const double lead = -spec.beta * std::log(std::cosh(0.5 * spec.delta));
  BasisOperator out;
  out.basis = Basis::Number;
  out.dim = dim;
  out.label = "M";
  out.entries = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int k = 0; k < dim; ++k) {
      // s^{n+k} M_n(k; beta, s^2) = sum_j (-n)_j (-k)_j / ((beta)_j j!) s^{n+k-2j} (s^2 - 1)^j
      double sum = 0.0;
      double coef = 1.0;
      for (int j = 0; j <= std::min(n, k); ++j) {
        const int e = n + k - 2 * j;
        sum += coef * (e == 0 ? 1.0 : std::pow(s, e));
        coef *= double(-n + j) * double(-k + j) * s2m1 / ((spec.beta + j) * (j + 1.0));
      }
      const double norm = 0.5 * (log_pochhammer(spec.beta, n).log_magnitude +
                                 log_pochhammer(spec.beta, k).log_magnitude - log_factorial(n) -
                                 log_factorial(k));
      out.entries(n, k) = ((k % 2) ? -1.0 : 1.0) * std::exp(norm + lead) * sum;
    }
  }
  return out;
}

double boost_defect(const IntertwinerSpec& spec, int dim, int window) {
  if (window < 1 || window > dim) throw ShapeError("boost_defect: window outside the matrix");
  const Eigen::MatrixXcd M = intertwiner_matrix(spec, dim).entries;
  Eigen::MatrixXcd K0p = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd K2p = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    K0p(n, n) = n + 0.5 * spec.beta;
    if (n + 1 < dim) {
      const double kappa = std::sqrt((n + 1.0) * (n + spec.beta));
      K2p(n + 1, n) = -0.5 * kappa;
      K2p(n, n + 1) = -0.5 * kappa;
    }
  }
  const Eigen::MatrixXcd rhs =
      M * (std::cosh(spec.delta) * K0p - std::sinh(spec.delta) * K2p) * M.transpose();
  double worst = 0.0;
  for (int m = 0; m < window; ++m) {
    for (int n = 0; n < window; ++n) {
      const double lhs = (m == n) ? n + 0.5 * spec.beta : 0.0;
      worst = std::max(worst, std::abs(rhs(m, n) - lhs));
    }
  }
  return worst;
}

Eigen::VectorXd build_psi_by_raising(const MeixnerParams& m, int n, const Grid& grid) {
  validate(m);
  if (n < 0) throw DomainError("build_psi_by_raising: negative n");
  if (!std::holds_alternative<MeixnerParams>(grid.model)) throw GridError("grid is not a Meixner grid");
  if (grid.x_step != 1.0) throw GridError("K+ acts on the native lattice grid");
  if (n == 0) {
    Eigen::VectorXd psi0(grid.count);
    for (int i = 0; i < grid.count; ++i) psi0(i) = wavefunction(m, 0, grid.x(i));
    return psi0;
  }
  // extended precision throughout: rounding noise in psi_0 and in each step
  // sits in high modes, which K+ amplifies by roughly the grid extent
  using ld = long double;
  const int count = grid.count;
  const ld g = m.gamma, b = m.beta, sg = std::sqrt(g), w = 1.0L / (1.0L - g);
  std::vector<ld> f(count), next(count);
  f[0] = std::pow(1.0L - g, 0.5L * b);
  for (int i = 1; i < count; ++i) f[i] = f[i - 1] * std::sqrt(g * (i - 1 + b) / i);
  for (int k = 0; k < n; ++k) {
    const ld norm = std::sqrt((k + 1.0L) * (k + b));
    for (int i = 0; i < count; ++i) {
      const ld x = grid.x(i);
      ld v = -2.0L * sg * w * (x + 0.5L * b) * f[i];
      if (i > 0) v += std::sqrt(x * (x + b - 1.0L)) * w * f[i - 1];
      if (i + 1 < count) v += g * w * std::sqrt((x + 1.0L) * (x + b)) * f[i + 1];
      next[i] = v / norm;
    }
    std::swap(f, next);
  }
  Eigen::VectorXd out(count);
  for (int i = 0; i < count; ++i) out(i) = static_cast<double>(f[i]);
  return out;
}

Eigen::VectorXd spectrum(const BasisOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.entries, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace dosc
