#include "dosc/coherent.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "dosc/csv.hpp"
#include "dosc/errors.hpp"

namespace dosc {

namespace {

constexpr double kCoeffCut = 1e-28;
constexpr int kMinTerms = 16;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxTerms = 5000;

// Appends c_n from log|c_n| and its phase until the cut.
template <class LogAbs, class Phase>
Eigen::VectorXcd coefficient_series(LogAbs log_abs, Phase phase) {
  std::vector<cplx> c;
  double peak = kNegInf;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double la = log_abs(n);
    const cplx v = la == kNegInf ? cplx(0.0) : std::exp(la) * phase(n);
    c.push_back(v);
    peak = std::max(peak, la);
    if (n + 1 >= kMinTerms && la < peak && 2.0 * la < std::log(kCoeffCut)) break;
    if (n + 1 == kMaxTerms) throw TruncationError("coherent-state coefficients did not decay");
  }
  return Eigen::Map<Eigen::VectorXcd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

void require_meixner_lattice(const Grid& grid) {
  if (!std::holds_alternative<MeixnerParams>(grid.model) || grid.x_step != 1.0 || grid.x_start != 0.0) {
    throw GridError("coherent states live on the Meixner lattice grid");
  }
}

// I_nu(x) by its power series, principal branch of (x/2)^nu.
cplx bessel_i_series(double nu, cplx x) {
  if (x == cplx(0.0)) return nu == 0.0 ? cplx(1.0) : cplx(0.0);
  const cplx h = 0.5 * x;
  const cplx q = h * h;
  cplx term = std::exp(nu * std::log(h) - log_gamma(nu + 1.0));
  cplx sum = term;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

cplx bessel_i_any(double nu, cplx x) {
  if (nu >= 0.0 && x.imag() == 0.0 && x.real() >= 0.0) return bessel_i(nu, x.real());
  return bessel_i_series(nu, x);
}

}  // namespace

CoherentState bg_state(const MeixnerParams& m, cplx z, const Grid& grid) {
  validate(m);
  require_meixner_lattice(grid);
  CoherentState s;
  s.kind = CoherentKind::BarutGirardello;
  s.parameter = z;
  s.model = m;
  s.grid = grid;
  s.grid.model = m;
  const double lz = std::abs(z) == 0.0 ? kNegInf : std::log(std::abs(z));
  const double arg = std::arg(z);
  s.coeffs = coefficient_series(
      [&](int n) {
        if (n == 0) return 0.0;
        if (lz == kNegInf) return kNegInf;
        return n * lz - 0.5 * (log_factorial(n) + log_pochhammer(m.beta, n).log_magnitude);
      },
      [&](int n) { return std::polar(1.0, n * arg); });

  const double sg = std::sqrt(m.gamma);
  const cplx w = (m.gamma - 1.0) / sg * z;
  const cplx pre = std::exp(-z * sg);
  s.grid_values.resize(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const int xi = static_cast<int>(grid.x(i));
    const cplx num[1] = {cplx(-xi)};
    const cplx den[1] = {cplx(m.beta)};
    s.grid_values(i) = pre * hyp_terminating(num, den, w, xi) * wavefunction(m, 0, xi);
  }
  return s;
}

CoherentState perelomov_state(const MeixnerParams& m, cplx zeta, const Grid& grid) {
  validate(m);
  require_meixner_lattice(grid);
  const double r2 = std::norm(zeta);
  if (!(r2 < 1.0)) throw DomainError("zeta must lie inside the unit disk");
  CoherentState s;
  s.kind = CoherentKind::Perelomov;
  s.parameter = zeta;
  s.model = m;
  s.grid = grid;
  s.grid.model = m;
  const double front = 0.5 * m.beta * std::log1p(-r2);
  const double lz = std::abs(zeta) == 0.0 ? kNegInf : std::log(std::abs(zeta));
  const double arg = std::arg(zeta);
  s.coeffs = coefficient_series(
      [&](int n) {
        if (n == 0) return front;
        if (lz == kNegInf) return kNegInf;
        return front + n * lz + 0.5 * (log_pochhammer(m.beta, n).log_magnitude - log_factorial(n));
      },
      [&](int n) { return std::polar(1.0, n * arg); });

  const double sg = std::sqrt(m.gamma);
  const cplx u = 1.0 + zeta / sg;
  const cplx v = 1.0 + sg * zeta;
  const cplx log_u = u == cplx(0.0) ? cplx(kNegInf) : std::log(u);
  const cplx log_v = std::log(v);
  s.grid_values.resize(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const double xi = grid.x(i);
    const double psi0 = wavefunction(m, 0, xi);
    if (xi == 0.0) {
      s.grid_values(i) = std::exp(front - m.beta * log_v) * psi0;
      continue;
    }
    if (u == cplx(0.0)) {
      s.grid_values(i) = 0.0;
      continue;
    }
    s.grid_values(i) = std::exp(front + xi * log_u - (xi + m.beta) * log_v) * psi0;
  }
  return s;
}

Eigen::VectorXcd synthesize(const CoherentState& state) {
  const int n_max = static_cast<int>(state.coeffs.size()) - 1;
  const WaveTable t = build_wavetable(state.grid, n_max);
  return t.values.cast<cplx>().transpose() * state.coeffs;
}

BgOverlap bg_overlap_forms(const MeixnerParams& m, cplx z, cplx z_prime) {
  validate(m);
  const cplx w = std::conj(z) * z_prime;
  const double b = m.beta;
  BgOverlap out;
  cplx term = 1.0;
  out.series = term;
  for (int n = 1; n < 5000; ++n) {
    term *= w / (n * (b + n - 1.0));
    out.series += term;
    if (n > 2.0 * std::sqrt(std::abs(w)) && std::abs(term) <= 1e-17 * std::abs(out.series)) break;
  }
  if (w == cplx(0.0)) {
    out.closed = 1.0;
    out.printed = std::pow(2.0, 1.0 - b);
    return out;
  }
  const cplx sw = std::sqrt(w);
  const cplx pre = std::exp(log_gamma(b) + 0.5 * (1.0 - b) * std::log(w));
  out.closed = pre * bessel_i_any(b - 1.0, 2.0 * sw);
  out.printed = pre * bessel_i_any(b - 1.0, sw);
  return out;
}

cplx bg_overlap(const MeixnerParams& m, cplx z, cplx z_prime) { return bg_overlap_forms(m, z, z_prime).series; }

cplx perelomov_overlap(const MeixnerParams& m, cplx zeta, cplx zeta_prime) {
  validate(m);
  const double a = std::norm(zeta), b = std::norm(zeta_prime);
  if (!(a < 1.0) || !(b < 1.0)) throw DomainError("zeta must lie inside the unit disk");
  const double front = 0.5 * m.beta * (std::log1p(-a) + std::log1p(-b));
  return std::exp(front - m.beta * std::log(1.0 - std::conj(zeta) * zeta_prime));
}

void write_state_csv(std::ostream& out, const CoherentState& state) {
  write_csv_row(out, {"xi", "re_value", "im_value"});
  for (int i = 0; i < state.grid.count; ++i) {
    write_csv_row(out, {csv_number(state.grid.xi(i)), csv_number(state.grid_values(i).real()),
                        csv_number(state.grid_values(i).imag())});
  }
}

}  // namespace dosc
