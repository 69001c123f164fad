#include "dosc/params.hpp"

#include <cmath>
#include <numbers>

#include "dosc/errors.hpp"

namespace dosc {

void validate(const CharlierParams& c) {
  if (!(c.mu > 0.0) || !std::isfinite(c.mu)) throw ParameterError("mu must be positive");
}

void validate(const KravchukParams& k) {
  if (!(k.p > 0.0 && k.p < 1.0)) throw ParameterError("p must lie in (0,1)");
  if (k.N < 1) throw ParameterError("N must be a positive integer");
}

void validate(const MeixnerParams& m) {
  if (!(m.beta > 0.0) || !std::isfinite(m.beta)) throw ParameterError("beta must be positive");
  if (!(m.gamma > 0.0 && m.gamma < 1.0)) throw ParameterError("gamma must lie in (0,1)");
}

void validate(const MeixnerPollaczekParams& mp) {
  if (!(mp.lambda > 0.0) || !std::isfinite(mp.lambda)) {
    throw ParameterError("lambda must be positive");
  }
  if (!(mp.phi > 0.0 && mp.phi < std::numbers::pi)) throw ParameterError("phi must lie in (0,pi)");
}

void validate(const ModelParams& params) {
  std::visit(
      [](const auto& p) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, HermiteParams>) validate(p);
      },
      params);
}

std::string model_name(const ModelParams& params) {
  static constexpr const char* names[] = {"hermite", "charlier", "kravchuk", "meixner",
                                          "meixner-pollaczek"};
  return names[params.index()];
}

}  // namespace dosc
