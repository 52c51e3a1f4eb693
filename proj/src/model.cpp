#include "lvsim/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lvsim {

ModelParams::ModelParams(double a, double p, double c1) : a_(a), p_(p), c1_(c1) {
  if (!(a >= 0.0 && a <= 1.0)) {
    std::ostringstream msg;
    msg << "aggression a must lie in [0,1], got " << a;
    throw std::invalid_argument(msg.str());
  }
  if (!(p > 0.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "fitness p must be positive, got " << p;
    throw std::invalid_argument(msg.str());
  }
  if (!(c1 > 0.0) || !std::isfinite(c1)) {
    std::ostringstream msg;
    msg << "kill ratio c1 must be positive, got " << c1;
    throw std::invalid_argument(msg.str());
  }
}

void ClassicParams::validate() const {
  const bool ok = a_birth > 0.0 && b > 0.0 && delta > 0.0 && n > 0.0 &&
                  std::isfinite(a_birth) && std::isfinite(b) &&
                  std::isfinite(delta) && std::isfinite(n);
  if (!ok) {
    throw std::invalid_argument("classic parameters must all be positive");
  }
}

Derivative strategic_field(const State &s, const ModelParams &m) {
  if (!s.in_unit_square(kDomainTolerance)) {
    std::ostringstream msg;
    msg << "state (" << s.u << ", " << s.v << ") lies outside [0,1]^2";
    throw std::domain_error(msg.str());
  }
  return detail::strategic_rhs(s.u, s.v, m);
}

Derivative classic_field(double prey, double predator, const ClassicParams &cp) {
  cp.validate();
  if (prey < 0.0 || predator < 0.0) {
    throw std::domain_error("populations must be nonnegative");
  }
  return {prey * (cp.a_birth - cp.b * predator),
          predator * (-cp.n + cp.delta * prey)};
}

State normalize_counts(double raw_u, double raw_v) {
  if (raw_u < 0.0 || raw_v < 0.0 || !std::isfinite(raw_u) ||
      !std::isfinite(raw_v)) {
    throw std::invalid_argument("raw counts must be finite and nonnegative");
  }
  const double total = raw_u + raw_v;
  if (total <= 0.0) {
    throw std::invalid_argument("raw counts must not both be zero");
  }
  return {raw_u / total, raw_v / total};
}

} // namespace lvsim
