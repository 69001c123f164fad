#pragma once

#include <string>
#include <variant>

namespace dosc {

struct HermiteParams {};

struct CharlierParams {
  double mu = 1.0;
};

struct KravchukParams {
  double p = 0.5;
  int N = 4;
};

struct MeixnerParams {
  double beta = 2.0;
  double gamma = 0.4;
};

struct MeixnerPollaczekParams {
  double lambda = 1.0;
  double phi = 1.5707963267948966;
};

/// Parameter set of one oscillator family.
using ModelParams = std::variant<HermiteParams, CharlierParams, KravchukParams,
                                 MeixnerParams, MeixnerPollaczekParams>;

/// Throws ParameterError naming the violated invariant, e.g.
/// "gamma must lie in (0,1)".
void validate(const ModelParams& params);
void validate(const CharlierParams& params);
void validate(const KravchukParams& params);
void validate(const MeixnerParams& params);
void validate(const MeixnerPollaczekParams& params);

std::string model_name(const ModelParams& params);

}  // namespace dosc
