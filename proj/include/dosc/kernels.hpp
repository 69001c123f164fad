#pragma once

#include <Eigen/Dense>
#include <array>
#include <ostream>

#include "dosc/models.hpp"

namespace dosc {

struct KernelSeries {
  cplx value;
  /// |t^N psi_N psi'_N| of the last term kept.
  double last_term = 0.0;
  /// last_term <= 1e-12 |value|
  bool converged = true;
};

/// sum_{n=0}^{n_cutoff} t^n psi_n(xi) psi_n(xi') for Meixner, Charlier,
/// Kravchuk (cut at N) and Hermite.
KernelSeries kernel_series(const ModelParams& model, cplx t, double xi, double xi_prime, int n_cutoff);

/// kernel_series at r t for r = 1 - h and r = 1 - 2h, extrapolated to r = 1.
cplx kernel_series_abel(const ModelParams& model, cplx t, double xi, double xi_prime, int n_cutoff,
                        double h = 1e-6);

/// sqrt(rho(xi) rho(xi')) (1-gamma)^beta (1-t)^{xi+xi'} (1-gamma t)^{-xi-xi'-beta}
///   * 2F1(-xi, -xi'; beta; t (1-gamma)^2 / (gamma (1-t)^2))
/// Throws DomainError at t = 1 or t = 1/gamma and for non-integer points.
cplx kernel_closed(const MeixnerParams& model, cplx t, int xi, int xi_prime);

/// The same with the 2F1 argument t (1 - gamma^2) / (gamma (1-t)^2).
cplx kernel_closed_printed(const MeixnerParams& model, cplx t, int xi, int xi_prime);

/// sum_n (beta)_n/n! t^n M_n(xi) M_n(xi') in closed form:
///   (1-t)^{-beta-xi-xi'} (1 - t/gamma)^{xi+xi'} 2F1(-xi, -xi'; beta; arg)
/// with arg = t (1-gamma)^2 / (t-gamma)^2, or t (1-gamma^2) / (t-gamma)^2 when printed.
cplx poisson_kernel(const MeixnerParams& model, cplx t, int xi, int xi_prime, bool printed = false);

struct LimitOne {
  std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
  std::array<double, 3> values{};
  double extrapolated = 0.0;
  /// |values[k] - delta| non-increasing.
  bool monotone = true;
};

/// kernel_closed at t = 1 - eps; the extrapolation is linear in eps from the
/// last two values.
LimitOne kernel_limit_one(const MeixnerParams& model, int xi, int xi_prime);

/// kernel_closed at t = i.
cplx kernel_i(const MeixnerParams& model, int xi, int xi_prime);

/// sqrt(rho rho') (1-i)^{xi+xi'} (1-gamma)^beta (1 - i gamma)^{-xi-xi'-beta}
///   * 2F1(-xi, -xi'; -beta; -(1-gamma)^2 / (2 gamma)).
/// NaN when -beta is a nonpositive integer that stops the sum early.
cplx kernel_i_printed(const MeixnerParams& model, int xi, int xi_prime);

/// e^{-(1-i) mu} (1-i)^{xi+xi'} mu^{(xi+xi')/2} / sqrt(xi! xi'!) 2F0(-xi, -xi'; ; -1/(2 mu))
cplx charlier_kernel(double mu, int xi, int xi_prime);

/// (1-i)^{xi+xi'} (pq)^{(xi+xi')/2} sqrt(C_N^xi C_N^xi') (1 - (1-i) p)^{N-xi-xi'}
///   * 2F1(-xi, -xi'; -N; 1/(2 p q))
/// Throws DomainError outside 0..N.
cplx kravchuk_kernel(double p, int N, int xi, int xi_prime);

struct KernelMatrix {
  cplx t;
  ModelParams model;
  int dim = 0;
  Eigen::MatrixXcd entries;
};

/// Entries over the first dim lattice points. Meixner: kernel_closed, with
/// kernel_series at t = 1 and where the terminating 2F1 cancels by more than
/// four digits. Charlier and Kravchuk: the closed forms at t = i,
/// kernel_series otherwise (Charlier series cut where terms fall below
/// 1e-17, Kravchuk exact).
KernelMatrix kernel_matrix(const ModelParams& model, cplx t, int dim);

/// Smallest dim such that |K_t(window - 1, xi')| stays below tol for
/// xi' >= dim (Meixner). Rows spread with |t|: at t = i row xi reaches out to
/// roughly 13 xi at gamma = 0.4.
int kernel_support(const MeixnerParams& model, cplx t, int window, double tol = 1e-15);

/// Max-abs entry of A B - C on the leading window; A, B, C share dim.
double composition_defect(const KernelMatrix& a, const KernelMatrix& b, const KernelMatrix& c, int window);

/// Max-abs entry of K K^dagger - I on the leading window.
double unitarity_defect(const KernelMatrix& k, int window);

/// Max over n <= n_max of the max-abs of sum_xi' K(xi, xi') psi_n(xi') - t^n psi_n(xi) on the window.
double reproduction_defect(const KernelMatrix& k, int n_max, int window);

/// Columns xi,xi_prime,re,im.
void write_kernel_csv(std::ostream& out, const KernelMatrix& k);

}  // namespace dosc
