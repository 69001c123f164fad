#pragma once

#include <Eigen/Dense>
#include <ostream>

#include "dosc/models.hpp"

namespace dosc {

enum class CoherentKind { BarutGirardello, Perelomov };

struct CoherentState {
  CoherentKind kind = CoherentKind::BarutGirardello;
  /// z for Barut-Girardello (any complex), zeta for Perelomov (|zeta| < 1).
  cplx parameter{0.0, 0.0};
  MeixnerParams model;
  Grid grid;
  /// Expansion coefficients over psi_n, cut once |c_n|^2 < 1e-28 past the
  /// largest term and n >= 16.
  Eigen::VectorXcd coeffs;
  /// Closed form at the grid points.
  Eigen::VectorXcd grid_values;
};

/// Eigenstate of K- with eigenvalue z (not normalized; c_n = z^n / sqrt(n! (beta)_n)).
CoherentState bg_state(const MeixnerParams& model, cplx z, const Grid& grid);

/// (1 - |zeta|^2)^{beta/2} exp(zeta K+) psi_0. Throws DomainError for |zeta| >= 1.
CoherentState perelomov_state(const MeixnerParams& model, cplx zeta, const Grid& grid);

/// sum_n c_n psi_n on the state's grid.
Eigen::VectorXcd synthesize(const CoherentState& state);

struct BgOverlap {
  /// sum_n w^n / (n! (beta)_n), w = conj(z) z'. Authoritative.
  cplx series;
  /// Gamma(beta) w^{(1-beta)/2} I_{beta-1}(2 sqrt w)
  cplx closed;
  /// Same with argument sqrt w.
  cplx printed;
};

BgOverlap bg_overlap_forms(const MeixnerParams& model, cplx z, cplx z_prime);
cplx bg_overlap(const MeixnerParams& model, cplx z, cplx z_prime);

/// [(1 - |zeta'|^2)(1 - |zeta|^2)]^{beta/2} (1 - conj(zeta) zeta')^{-beta}
cplx perelomov_overlap(const MeixnerParams& model, cplx zeta, cplx zeta_prime);

/// Columns xi,re_value,im_value.
void write_state_csv(std::ostream& out, const CoherentState& state);

}  // namespace dosc
