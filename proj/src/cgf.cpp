#include "binomsum/cgf.hpp"

#include <cmath>
#include <stdexcept>

namespace binomsum {

CgfDerivatives eval_cgf(const BinomialMixture& mix, double u) {
  if (!std::isfinite(u)) {
    throw std::invalid_argument("eval_cgf: u must be finite");
  }
  const RealArray& p = mix.probs();
  if ((p <= 0.0).any() || (p >= 1.0).any()) {
    throw std::invalid_argument(
        "eval_cgf: probabilities must lie strictly inside (0,1); "
        "split degenerate components first");
  }
  const RealArray& n = mix.sizes_real();

  RealArray q(p.size());
  double k = 0.0;
  if (u > 0.0) {
    // e^u overflows long before the logistic saturates, so divide through by
    // it: q = 1/(1 + ((1-p)/p) e^-u) and K = sum n (u + ln(p + (1-p)e^-u)).
    const double em1 = std::expm1(-u);
    q = 1.0 / (1.0 + ((1.0 - p) / p) * std::exp(-u));
    k = (n * (u + ((1.0 - p) * em1).log1p())).sum();
  } else {
    const double eu = std::exp(u);
    q = p * eu / (1.0 - p + p * eu);
    k = (n * (p * std::expm1(u)).log1p()).sum();
  }

  const RealArray nq = n * q;
  const RealArray v = q * (1.0 - q);  // tilted per-trial Bernoulli variance
  const RealArray nv = n * v;

  CgfDerivatives d;
  d.u = u;
  d.k = k;
  d.k1 = nq.sum();
  d.k2 = nv.sum();
  d.k3 = (nv * (1.0 - 2.0 * q)).sum();
  d.k4 = (nv * (1.0 - 6.0 * v)).sum();
  return d;
}

}  // namespace binomsum
