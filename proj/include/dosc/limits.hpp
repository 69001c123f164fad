#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dosc {

/// Error of one limit relation across a parameter ladder.
/// errors[c][k] is column c at parameter_values[k].
struct ConvergenceTable {
  std::string relation_id;
  std::vector<double> parameter_values;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> errors;
  std::vector<std::pair<int, double>> test_points;
  /// Distance from the requested xi to the lattice point actually used, per
  /// parameter value. Zero when the point is on the lattice.
  std::vector<double> offsets;

  /// Column c non-increasing over the last three parameter values.
  bool monotone(std::size_t c) const;
  bool monotone() const;
  /// first / last error of column c; infinity when the last one is zero.
  double reduction(std::size_t c) const;
  /// log(e_{k-1}/e_k) / log(p_k/p_{k-1}) from the last two points.
  double rate(std::size_t c) const;
  /// Every column drops by at least `factor` from the first to the last
  /// parameter value (a column that is zero throughout passes).
  bool reduces_by(double factor) const;
};

/// |K_n(x; mu/N, N) - C_n(x; mu)|.
ConvergenceTable limit_kravchuk_to_charlier(double mu, int n, int x,
                                            const std::vector<double>& N_values = {1e2, 1e3, 1e4});

/// x = mu + xi sqrt(2 mu). Columns: polynomial, wavefunction.
ConvergenceTable limit_charlier_to_hermite(int n, double xi,
                                           const std::vector<double>& mu_values = {1e2, 1e3, 1e4});

/// x = pN + xi sqrt(2Npq). Columns: polynomial, weight, wavefunction.
ConvergenceTable limit_kravchuk_to_hermite(int n, double xi, double p,
                                           const std::vector<double>& N_values = {1e2, 1e3, 1e4});

/// beta = nu/gamma, x = (nu + sqrt(2 nu) xi)/(1 - gamma).
/// Columns: polynomial, weight, norm, wavefunction.
ConvergenceTable limit_meixner_to_hermite(int n, double xi, double gamma,
                                          const std::vector<double>& nu_values = {1e2, 1e3, 1e4});

/// gamma = mu/beta at lattice point k. Columns: polynomial, wavefunction.
ConvergenceTable limit_meixner_to_charlier(double mu, int n, int k,
                                           const std::vector<double>& beta_values = {1e2, 1e3, 1e4});

/// gamma = 1 - h at the lattice point nearest x/h. Columns: polynomial and,
/// when beta = 2l + 2 for integer l >= 0, coulomb.
ConvergenceTable limit_meixner_to_laguerre(double beta, int n, double x,
                                           const std::vector<double>& h_values = {1e-1, 1e-2, 1e-3});

/// Kravchuk from Meixner at beta = -N, gamma = p/(p-1) against the direct
/// series, max over n <= N, x in [0, N] and a few p, one row per N.
ConvergenceTable exact_kravchuk(const std::vector<double>& N_values = {1, 2, 4, 8, 12});

/// The six limit tables at their default points and ladders.
std::vector<ConvergenceTable> default_limit_tables();

struct ContractionCheck {
  std::string name;
  double parameter = 0.0;
  /// max_{n <= n_max} entrywise deviation from the sqrt(n) ladder.
  double error = 0.0;
};

/// Scaled number-basis ladder entries against the Heisenberg-Weyl ones.
std::vector<ContractionCheck> contraction_checks(int n_max = 6, double finest = 1e4);

/// `param,<columns>,offset`
void write_table_csv(std::ostream& out, const ConvergenceTable& table);

}  // namespace dosc
