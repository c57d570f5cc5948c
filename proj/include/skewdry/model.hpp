#ifndef SKEWDRY_MODEL_HPP
#define SKEWDRY_MODEL_HPP

#include <cmath>

#include "skewdry/errors.hpp"

namespace skewdry {

/// Parameters of skew Brownian motion with dry friction:
///   dX = -2*mu*sign(X) dt + eta dL + sqrt(2) dW,  X(0) = 0.
/// mu >= 0 is half the drift magnitude, eta in (-1,1) the skewness of the
/// local-time term. alpha = (1+eta)/2 is derived, never set directly.
struct ModelParams {
  double mu;
  double eta;
  double alpha;
};

inline ModelParams params_new(double mu, double eta) {
  if (!std::isfinite(mu) || mu < 0.0)
    throw DomainError("mu must be finite and >= 0");
  if (!std::isfinite(eta) || !(eta > -1.0 && eta < 1.0))
    throw DomainError("eta must lie strictly inside (-1, 1)");
  return ModelParams{mu, eta, (1.0 + eta) / 2.0};
}

/// x <-> -x symmetry partner: eta negated, mu unchanged. Involution.
inline ModelParams mirror(const ModelParams& p) {
  return params_new(p.mu, -p.eta);
}

}  // namespace skewdry

#endif
