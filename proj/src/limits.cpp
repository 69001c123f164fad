#include "dosc/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dosc/algebra.hpp"
#include "dosc/csv.hpp"
#include "dosc/errors.hpp"
#include "dosc/models.hpp"
#include "dosc/polynomials.hpp"

namespace dosc {

namespace {

double hermite(int n, double xi) { return poly_value(HermiteParams{}, n, xi); }
double hermite_psi(int n, double xi) { return wavefunction(HermiteParams{}, n, xi); }
double gauss(double xi) { return std::exp(-xi * xi) / std::sqrt(std::numbers::pi); }
double sign_n(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

ConvergenceTable start(std::string id, const std::vector<double>& params, std::vector<std::string> columns,
                       int n, double xi) {
  if (params.empty()) throw ParameterError("limit table needs at least one parameter value");
  if (n < 0) throw DomainError("negative degree");
  ConvergenceTable t;
  t.relation_id = std::move(id);
  t.parameter_values = params;
  t.errors.assign(columns.size(), {});
  t.columns = std::move(columns);
  t.test_points = {{n, xi}};
  return t;
}

int nearest_lattice(double x) {
  const double k = std::round(x);
  if (k < 0.0) throw DomainError("limit point falls below the lattice; raise the parameter");
  return static_cast<int>(k);
}

// Ladder matrix of dim n_max + 2 scaled by `scale`, against the oscillator
// one on the leading (n_max + 1) block.
double ladder_error(Op op, const ModelParams& model, double scale, int n_max, bool lowering) {
  const int dim = n_max + 2;
  const BasisOperator L = operator_matrix(op, model, Basis::Number, dim);
  const BasisOperator a = operator_matrix(lowering ? Op::a : Op::aplus, HermiteParams{}, Basis::Number, dim);
  const int w = n_max + 1;
  return (scale * L.entries.topLeftCorner(w, w) - a.entries.topLeftCorner(w, w)).cwiseAbs().maxCoeff();
}

}  // namespace

bool ConvergenceTable::monotone(std::size_t c) const {
  const auto& e = errors.at(c);
  const std::size_t from = e.size() >= 3 ? e.size() - 3 : 0;
  for (std::size_t k = from + 1; k < e.size(); ++k) {
    if (e[k] > e[k - 1]) return false;
  }
  return true;
}

bool ConvergenceTable::monotone() const {
  for (std::size_t c = 0; c < errors.size(); ++c) {
    if (!monotone(c)) return false;
  }
  return true;
}

double ConvergenceTable::reduction(std::size_t c) const {
  const auto& e = errors.at(c);
  if (e.back() == 0.0) return e.front() == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return e.front() / e.back();
}

double ConvergenceTable::rate(std::size_t c) const {
  const auto& e = errors.at(c);
  const std::size_t k = e.size() - 1;
  if (k == 0 || e[k] == 0.0 || e[k - 1] == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::log(e[k - 1] / e[k]) / std::abs(std::log(parameter_values[k] / parameter_values[k - 1]));
}

bool ConvergenceTable::reduces_by(double factor) const {
  for (const auto& e : errors) {
    if (e.front() == 0.0 && e.back() == 0.0) continue;
    if (!(e.back() * factor <= e.front())) return false;
  }
  return true;
}

ConvergenceTable limit_kravchuk_to_charlier(double mu, int n, int x, const std::vector<double>& N_values) {
  validate(CharlierParams{mu});
  ConvergenceTable t = start("kravchuk-charlier", N_values, {"polynomial"}, n, x);
  const double target = poly_value(CharlierParams{mu}, n, x);
  for (double Nd : N_values) {
    const int N = static_cast<int>(std::lround(Nd));
    if (mu >= N || n > N || x > N) throw ParameterError("kravchuk-charlier needs N > mu, n, x");
    t.errors[0].push_back(std::abs(poly_value(KravchukParams{mu / N, N}, n, x) - target));
    t.offsets.push_back(0.0);
  }
  return t;
}

ConvergenceTable limit_charlier_to_hermite(int n, double xi, const std::vector<double>& mu_values) {
  ConvergenceTable t = start("charlier-hermite", mu_values, {"polynomial", "wavefunction"}, n, xi);
  for (double mu : mu_values) {
    const CharlierParams c{mu};
    validate(c);
    const double h1 = 1.0 / std::sqrt(2.0 * mu);
    const int k = nearest_lattice(mu + xi / h1);
    const double xk = (k - mu) * h1;
    t.errors[0].push_back(
        std::abs(std::pow(h1, -n) * poly_value(c, n, k) - sign_n(n) * hermite(n, xk)));
    t.errors[1].push_back(std::abs(wavefunction(c, n, k) / std::sqrt(h1) - hermite_psi(n, xk)));
    t.offsets.push_back(xk - xi);
  }
  return t;
}

ConvergenceTable limit_kravchuk_to_hermite(int n, double xi, double p, const std::vector<double>& N_values) {
  ConvergenceTable t =
      start("kravchuk-hermite", N_values, {"polynomial", "weight", "wavefunction"}, n, xi);
  const double q = 1.0 - p;
  for (double Nd : N_values) {
    const int N = static_cast<int>(std::lround(Nd));
    const KravchukParams kp{p, N};
    validate(kp);
    if (n > N) throw DegreeError("kravchuk-hermite: degree exceeds N");
    const double h2 = 1.0 / std::sqrt(2.0 * N * p * q);
    const int k = nearest_lattice(p * N + xi / h2);
    if (k > N) throw DomainError("limit point falls beyond the Kravchuk lattice");
    const double xk = (k - p * N) * h2;
    const double scale = std::exp(0.5 * (log_binomial(N, n) + n * std::log(p / q)));
    t.errors[0].push_back(std::abs(sign_n(n) * scale * poly_value(kp, n, k) -
                                   hermite(n, xk) / std::sqrt(std::exp2(n) * std::tgamma(n + 1.0))));
    t.errors[1].push_back(std::abs(weight(kp, k).value() / h2 - gauss(xk)));
    t.errors[2].push_back(std::abs(wavefunction(kp, n, k) / std::sqrt(h2) - hermite_psi(n, xk)));
    t.offsets.push_back(xk - xi);
  }
  return t;
}

ConvergenceTable limit_meixner_to_hermite(int n, double xi, double gamma, const std::vector<double>& nu_values) {
  ConvergenceTable t =
      start("meixner-hermite", nu_values, {"polynomial", "weight", "norm", "wavefunction"}, n, xi);
  for (double nu : nu_values) {
    const MeixnerParams m{nu / gamma, gamma};
    validate(m);
    const double s = std::sqrt(2.0 * nu);
    const int k = nearest_lattice((nu + s * xi) / (1.0 - gamma));
    const double xk = ((1.0 - gamma) * k - nu) / s;
    const double log1mg = std::log1p(-gamma);
    t.errors[0].push_back(std::abs(std::pow(s, n) * poly_value(m, n, k) - sign_n(n) * hermite(n, xk)));
    t.errors[1].push_back(
        std::abs(s * std::exp(weight(m, k).log_magnitude + (m.beta - 1.0) * log1mg) - gauss(xk)));
    const double log_ratio = n * std::log(s) + 0.5 * m.beta * log1mg + 0.5 * square_norm(m, n).log_magnitude -
                             0.5 * (n * std::log(2.0) + log_factorial(n));
    t.errors[2].push_back(std::abs(std::expm1(log_ratio)));
    t.errors[3].push_back(
        std::abs(std::sqrt(s) / std::sqrt(1.0 - gamma) * wavefunction(m, n, k) - hermite_psi(n, xk)));
    t.offsets.push_back(xk - xi);
  }
  return t;
}

ConvergenceTable limit_meixner_to_charlier(double mu, int n, int k, const std::vector<double>& beta_values) {
  const CharlierParams c{mu};
  validate(c);
  if (k < 0) throw DomainError("lattice point must be nonnegative");
  ConvergenceTable t = start("meixner-charlier", beta_values, {"polynomial", "wavefunction"}, n, k);
  const double poly = poly_value(c, n, k);
  const double psi = wavefunction(c, n, k);
  for (double beta : beta_values) {
    const MeixnerParams m{beta, mu / beta};
    validate(m);
    t.errors[0].push_back(std::abs(poly_value(m, n, k) - poly));
    t.errors[1].push_back(std::abs(wavefunction(m, n, k) - psi));
    t.offsets.push_back(0.0);
  }
  return t;
}

ConvergenceTable limit_meixner_to_laguerre(double beta, int n, double x, const std::vector<double>& h_values) {
  const double l2 = beta - 2.0;
  const bool coulomb = l2 >= 0.0 && l2 == 2.0 * std::floor(l2 / 2.0);
  std::vector<std::string> columns{"polynomial"};
  if (coulomb) columns.push_back("coulomb");
  ConvergenceTable t = start("meixner-laguerre", h_values, columns, n, x);
  const int l = coulomb ? static_cast<int>(l2 / 2.0) : 0;
  const double lead = std::exp(log_factorial(n) - log_pochhammer(beta, n).log_magnitude);
  for (double h : h_values) {
    if (!(h > 0.0 && h < 1.0)) throw ParameterError("h must lie in (0,1)");
    const MeixnerParams m{beta, 1.0 - h};
    validate(m);
    const int k = nearest_lattice(x / h);
    const double xk = k * h;
    t.errors[0].push_back(std::abs(poly_value(m, n, k) - lead * poly_value(LaguerreParams{beta - 1.0}, n, xk)));
    if (coulomb) {
      t.errors[1].push_back(
          std::abs(wavefunction(m, n, k) / std::sqrt(h) - std::sqrt(xk) * coulomb_radial(n, l, xk)));
    }
    t.offsets.push_back(xk - x);
  }
  return t;
}

ConvergenceTable exact_kravchuk(const std::vector<double>& N_values) {
  ConvergenceTable t = start("exact-kravchuk", N_values, {"relative"}, 0, 0.0);
  t.test_points.clear();
  for (double Nd : N_values) {
    const int N = static_cast<int>(std::lround(Nd));
    double worst = 0.0;
    for (double p : {0.2, 0.5, 0.7}) {
      const KravchukParams kp{p, N};
      for (int n = 0; n <= N; ++n) {
        for (int x = 0; x <= N; ++x) {
          const double direct = std::real(poly_eval(kp, n, double(x)));
          const double via = kravchuk_from_meixner(n, x, p, N);
          worst = std::max(worst, std::abs(via - direct) / std::max(1.0, std::abs(direct)));
        }
      }
    }
    t.errors[0].push_back(worst);
    t.offsets.push_back(0.0);
  }
  for (int n = 0; n <= static_cast<int>(N_values.back()); ++n) t.test_points.emplace_back(n, 0.0);
  return t;
}

std::vector<ConvergenceTable> default_limit_tables() {
  return {limit_kravchuk_to_charlier(1.0, 2, 3),  limit_charlier_to_hermite(4, 0.0),
          limit_kravchuk_to_hermite(4, 0.0, 0.5), limit_meixner_to_hermite(4, 0.0, 0.5),
          limit_meixner_to_charlier(1.0, 3, 4),   limit_meixner_to_laguerre(2.0, 2, 1.0)};
}

std::vector<ContractionCheck> contraction_checks(int n_max, double finest) {
  if (n_max < 0 || !(finest > 1.0)) throw ParameterError("contraction checks need n_max >= 0 and a parameter > 1");
  std::vector<ContractionCheck> out;
  const int N = static_cast<int>(std::lround(finest));
  const KravchukParams kp{0.5, N};
  const double sN = 1.0 / std::sqrt(double(N));
  out.push_back({"kravchuk A/sqrt(N) -> a", finest, ladder_error(Op::A, kp, sN, n_max, true)});
  out.push_back({"kravchuk A+/sqrt(N) -> a+", finest, ladder_error(Op::Aplus, kp, sN, n_max, false)});

  const double gamma = 0.5;
  const MeixnerParams mh{finest / gamma, gamma};
  const double sh = std::sqrt(gamma / finest);
  out.push_back({"meixner sqrt(gamma/nu) K- -> a", finest, ladder_error(Op::Kminus, mh, sh, n_max, true)});
  out.push_back({"meixner sqrt(gamma/nu) K+ -> a+", finest, ladder_error(Op::Kplus, mh, sh, n_max, false)});

  const MeixnerParams mc{finest, 1.0 / finest};
  const double sc = 1.0 / std::sqrt(finest);
  out.push_back({"meixner K-/sqrt(beta) -> b", finest, ladder_error(Op::Kminus, mc, sc, n_max, true)});
  out.push_back({"meixner K+/sqrt(beta) -> b+", finest, ladder_error(Op::Kplus, mc, sc, n_max, false)});
  return out;
}

void write_table_csv(std::ostream& out, const ConvergenceTable& t) {
  std::string header = "param";
  for (const auto& c : t.columns) header += "," + c;
  out << header << ",offset\n";
  for (std::size_t k = 0; k < t.parameter_values.size(); ++k) {
    out << csv_number(t.parameter_values[k]);
    for (const auto& e : t.errors) out << ',' << csv_number(e[k]);
    out << ',' << csv_number(t.offsets[k]) << '\n';
  }
}

}  // namespace dosc
