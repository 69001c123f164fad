#pragma once

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <vector>

#include "dosc/params.hpp"
#include "dosc/specfun.hpp"

namespace dosc {

/// Support of a model's wavefunctions. Point i sits at the natural lattice
/// coordinate x(i) = x_start + i * x_step (the polynomial argument: k for
/// Charlier, j for Kravchuk, xi for Meixner, the coordinate itself for
/// Hermite), and at the physical coordinate xi(i) = offset + step * x(i).
struct Grid {
  ModelParams model;
  double offset = 0.0;
  double step = 1.0;
  double x_start = 0.0;
  double x_step = 1.0;
  int count = 0;
  /// Number of points kept when the natural grid is half-infinite.
  int truncation_index = 0;
  bool finite = false;
  /// Quadrature weight per point: 1 on lattices, the spacing on sampled grids.
  double measure = 1.0;

  double x(int i) const { return x_start + i * x_step; }
  double xi(int i) const { return offset + step * x(i); }
  /// Index of natural coordinate x, or -1 when x is not a grid point.
  int index_of(double x) const;
};

struct WaveTable {
  ModelParams params;
  Grid grid;
  int n_max = 0;
  /// values(n, i) = psi_n at grid point i.
  Eigen::MatrixXd values;
};

struct OrthogonalityDefect {
  double primal = 0.0;
  /// Present when the table is complete enough for the dual sum to be
  /// meaningful (finite models with n_max = N).
  std::optional<double> dual;
};

/// Lattice grid with `count` points starting at x = 0 (Charlier, Kravchuk,
/// Meixner). Kravchuk ignores `count` and uses N + 1 points.
Grid lattice_grid(const ModelParams& model, int count);

/// Uniform sampling of the real line for Hermite, [-half_width, half_width].
Grid sampled_grid(const ModelParams& model, double half_width, double spacing);

/// Meixner grid refined to half-integer steps: x = -1/2, 0, 1/2, ..., M - 1,
/// i.e. 2M nodes for a native grid of M points.
Grid half_step_grid(const Grid& native);

/// Weight rho(x) of the model in log form. x is the natural coordinate; for
/// Meixner, non-integer x is admitted through the Gamma extension.
/// Throws DomainError for Kravchuk x outside [0, N].
LogWeight weight(const ModelParams& model, double x);

/// Square norm of the degree-n polynomial under weight(): c_n, n!/mu^n,
/// (q/p)^n / C(N,n), d_n, Gamma(2 lambda + n)/n!.
LogWeight square_norm(const ModelParams& model, int n);

/// psi_n at natural coordinate x. Lattice models require a lattice point
/// (DomainError otherwise); Hermite accepts any real x.
double wavefunction(const ModelParams& model, int n, double x);

/// Meixner psi_n at real x > -1, with rho extended through Gamma. Used for the
/// half-step grid.
double meixner_wavefunction_extended(const MeixnerParams& model, int n, double x);

/// psi_0..psi_{n_max} at one lattice point (or Hermite coordinate).
std::vector<double> wavefunction_column(const ModelParams& model, double x, int n_max);

/// Smallest grid whose dropped tail of sum_n psi_n^2 (n <= n_max) stays
/// below tail_tol. Throws TruncationError past max_points.
Grid truncated_grid(const ModelParams& model, int n_max, double tail_tol, int max_points = 200000);

WaveTable build_wavetable(const ModelParams& model, int n_max, double tail_tol,
                          int max_points = 200000);
/// Table on a caller-supplied grid.
WaveTable build_wavetable(const Grid& grid, int n_max);

/// Header xi,psi0,...,psi<n_max>; one row per grid point at its natural
/// coordinate.
void write_wavetable_csv(std::ostream& out, const WaveTable& table);

/// max_{n,k} |sum_grid psi_n psi_k - delta_{nk}| and, for complete finite
/// tables, the dual max_{i,j} |sum_n psi_n(i) psi_n(j) - delta_{ij}|.
OrthogonalityDefect orthogonality_defect(const WaveTable& table);

/// Dual (completeness) defect of an infinite lattice model over the leading
/// `window` grid points, summing n up to n_dual.
double dual_defect(const ModelParams& model, int window, int n_dual);

/// Coulomb radial function (-1)^n sqrt(n!/(n+2l+1)!) x^l e^{-x/2} L_n^{2l+1}(x).
double coulomb_radial(int n, int l, double x);

struct QuadratureSpec {
  double step = 0.05;
  double tail_tol = 1e-12;
  double convergence_tol = 1e-11;
  int max_refinements = 5;
};

/// max over n, n' <= n_max of the normalized Meixner-Pollaczek Gram defect,
/// integrals by composite trapezoid on [-L, L] with step halving until two
/// successive results agree. Throws NumericalError if they never do.
double mp_orthogonality_defect(double lambda, double phi, int n_max,
                               const QuadratureSpec& quadrature = {});

/// Tail tolerance used when the caller does not pass one: DOSC_TAIL_TOL from
/// the environment, else 1e-14.
double default_tail_tol();

}  // namespace dosc
