#pragma once

#include <variant>

#include "dosc/params.hpp"
#include "dosc/specfun.hpp"

namespace dosc {

/// Generalized Laguerre L_n^alpha. Only appears as a limit target.
struct LaguerreParams {
  double alpha = 0.0;
};

/// One polynomial family with its parameters. The alternative held selects
/// the family.
using PolyFamily = std::variant<HermiteParams, CharlierParams, KravchukParams, MeixnerParams,
                                LaguerreParams, MeixnerPollaczekParams>;

enum class PolyTag { Hermite, Charlier, Kravchuk, Meixner, Laguerre, MeixnerPollaczek };

PolyTag tag_of(const PolyFamily& family);

/// Checks the family invariants (mu > 0, 0 < p < 1, beta > 0, 0 < gamma < 1, ...).
void validate(const PolyFamily& family);

/// Value of the degree-n polynomial through its hypergeometric representation:
///   Hermite   n! sum_k (-1)^k (2x)^(n-2k) / (k! (n-2k)!)
///   Charlier  2F0(-n, -x; ; -1/mu)
///   Kravchuk  2F1(-n, -x; -N; 1/p)
///   Meixner   2F1(-n, -x; beta; 1 - 1/gamma)
///   MP        (2 lambda)_n / n! e^{-i n phi} 2F1(-n, lambda - i x; 2 lambda; 1 - e^{2 i phi})
/// Laguerre has no series here and is evaluated by its recurrence.
///
/// Throws DegreeError for Kravchuk with n > N.
cplx poly_eval(const PolyFamily& family, int n, cplx x);

/// Upward three-term recurrence seeded with p_0 = 1 and p_1 from the series.
/// Supported for Hermite, Charlier, Kravchuk, Meixner and Laguerre.
double poly_eval_recurrence(const PolyFamily& family, int n, double x);

/// Real-argument evaluation with the default policy: recurrence above degree
/// 30, series otherwise. Meixner, Charlier and Kravchuk values at an integer
/// x < n are taken as the degree-x value at n (the series is symmetric in n
/// and x), since the upward recurrence in n grows a spurious solution there.
double poly_value(const PolyFamily& family, int n, double x);

/// Charlier polynomial with the argument sign exactly as printed in the
/// source, 2F0(-n, -x; ; +1/mu). It is not orthogonal under the Poisson
/// weight; kept so that the convention choice stays testable.
double charlier_printed(int n, double x, double mu);

/// Meixner series 2F1(-n, -x; beta; 1 - 1/gamma) with no parameter
/// validation, so that beta = -N and gamma < 0 (the Kravchuk reduction) and
/// complex arguments are admissible.
cplx meixner_series(int n, cplx x, cplx beta, cplx gamma);

/// Kravchuk value obtained from the Meixner series at beta = -N,
/// gamma = p/(p-1).
double kravchuk_from_meixner(int n, double x, double p, int N);

/// Meixner-Pollaczek value e^{-i n phi} (2 lambda)_n / n! M_n(i x - lambda;
/// 2 lambda, e^{-2 i phi}). Real up to rounding.
cplx mp_from_meixner(int n, double x, double lambda, double phi);

}  // namespace dosc
