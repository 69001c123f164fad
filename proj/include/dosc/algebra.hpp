#pragma once

#include <Eigen/Dense>
#include <string>

#include "dosc/models.hpp"

namespace dosc {

enum class Basis { Number, Grid };

/// Difference operators of the lattice models.
///   Meixner   H (= K0), K+, K-, K1, K2, C, C+, B, B+
///   Charlier  H, b, b+
///   Kravchuk  H, A, A+, A0
///   Hermite   a, a+ (number basis only)
enum class Op { H, K0, Kplus, Kminus, K1, K2, C, Cplus, B, Bplus, b, bplus, A, Aplus, A0, a, aplus };

std::string op_name(Op op);

struct BasisOperator {
  Basis basis = Basis::Number;
  int dim = 0;
  Eigen::MatrixXcd entries;
  std::string label;
  /// True when no grid truncation is involved (finite Kravchuk basis, exact
  /// number-basis formulas), so the whole matrix may be compared.
  bool exact = false;
};

/// Meixner model at two values of gamma related by a boost:
/// gamma = tanh^2(theta/2), gamma' = tanh^2(theta'/2), delta = theta' - theta.
struct IntertwinerSpec {
  double beta = 2.0;
  double gamma = 0.3;
  double gamma_prime = 0.5;
  double theta = 0.0;
  double theta_prime = 0.0;
  double delta = 0.0;
};

IntertwinerSpec make_intertwiner_spec(double beta, double gamma, double gamma_prime);

/// (Hf)(x) on the model's lattice grid. Values beyond the last grid point are
/// taken as zero; the far edge therefore carries truncation error and is
/// excluded from windowed comparisons.
Eigen::VectorXd apply_hamiltonian(const Grid& grid, const Eigen::VectorXd& f);

/// Ladder operator action on a grid function. B and B+ require the half-step
/// grid (half_step_grid) and f sampled on it; B is evaluated on nodes x >= 0
/// and left zero at x = -1/2. Throws GridError without the half-step grid,
/// ShapeError on length mismatch, ParameterError for an operator the model
/// does not carry.
Eigen::VectorXcd apply_ladder(Op op, const Grid& grid, const Eigen::VectorXcd& f);
Eigen::VectorXcd apply_ladder(Op op, const Grid& grid, const Eigen::VectorXd& f);

/// Native grid for operator work: the truncated grid for n_max plus a guard
/// band of 20 points.
Grid operator_grid(const ModelParams& model, int n_max, double tail_tol);

/// dim x dim matrix of the operator. Number basis: <psi_m|O psi_n> summed
/// over the operator grid (Hermite a, a+ by their sqrt(n) entries). Grid
/// basis: action on the first dim grid points. Throws TruncationError when
/// Meixner ladder entries stray from kappa_n by more than 1e-6.
BasisOperator operator_matrix(Op op, const ModelParams& model, Basis basis, int dim,
                              double tail_tol = 1e-14);

/// Max-abs entry of [X, Y] - Z on the leading window x window block.
/// Throws BasisMismatch or ShapeError; for truncated operators the window
/// must stay below dim - 2.
double commutator_defect(const BasisOperator& X, const BasisOperator& Y,
                         const BasisOperator& Z_expected, int window);

/// Max-abs entry of K0^2 - K0 - K+K- - (beta/2)(beta/2 - 1) I on the window.
double casimir_defect(const MeixnerParams& model, int dim, int window);

/// Closed-form intertwiner M_{n,k} = sum_xi psi_n(xi; beta, gamma) psi_k(xi; beta, gamma').
BasisOperator intertwiner_matrix(const IntertwinerSpec& spec, int dim);

/// Max-abs deviation of K0 from cosh(delta) K0' - sinh(delta) K2', both sides
/// in the number basis of gamma (primed generators carried over by the
/// intertwiner), on the leading window.
double boost_defect(const IntertwinerSpec& spec, int dim, int window);

/// (n! (beta)_n)^{-1/2} K+^n psi_0 on the grid.
Eigen::VectorXd build_psi_by_raising(const MeixnerParams& model, int n, const Grid& grid);

/// Eigenvalues (ascending) of a Hermitian operator matrix.
Eigen::VectorXd spectrum(const BasisOperator& op);

}  // namespace dosc
