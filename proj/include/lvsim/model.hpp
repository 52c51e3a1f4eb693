#ifndef LVSIM_MODEL_HPP_
#define LVSIM_MODEL_HPP_

namespace lvsim {

/*
 * Parameters of the strategic-aggression competition system
 *
 *   du/dt = u (1 - u - v) - a c1 u
 *   dv/dt = p v (1 - u - v) - a u
 *
 * a is the share of population 1 committed to attacking, p the fitness of
 * population 2 to the shared resource and c1 the endured/inflicted loss
 * ratio of population 1. The reciprocal ratio c2 is derived, never stored.
 */
class ModelParams {
 public:
  ModelParams(double a, double p, double c1);

  double a() const { return a_; }
  double p() const { return p_; }
  double c1() const { return c1_; }
  double c2() const { return 1.0 / c1_; }

  /// Product a * c1, the quantity that selects the equilibrium regime.
  double ac() const { return a_ * c1_; }

  bool operator==(const ModelParams &) const = default;

 private:
  double a_;
  double p_;
  double c1_;
};

/// Density pair on the phase plane [0,1] x [0,1].
struct State {
  double u = 0.0;
  double v = 0.0;

  bool in_unit_square(double tol = 0.0) const {
    return u >= -tol && u <= 1.0 + tol && v >= -tol && v <= 1.0 + tol;
  }

  bool operator==(const State &) const = default;
};

/// Classic predator-prey parameters; every field must be strictly positive.
struct ClassicParams {
  double a_birth = 1.0;
  double b = 1.0;
  double delta = 1.0;
  double n = 1.0;

  void validate() const;
};

struct Derivative {
  double du_dt = 0.0;
  double dv_dt = 0.0;
};

inline constexpr double kDomainTolerance = 1e-12;

/// Right-hand side of the strategic system. Throws std::domain_error when
/// `s` lies outside the unit square by more than kDomainTolerance.
Derivative strategic_field(const State &s, const ModelParams &m);

/// Prey/predator rates dP/dt = P (a - b Q), dQ/dt = Q (delta P - n).
/// du_dt carries the prey rate and dv_dt the predator rate.
Derivative classic_field(double prey, double predator, const ClassicParams &cp);

/// Converts raw population counts into densities that sum to one.
State normalize_counts(double raw_u, double raw_v);

namespace detail {

// Unchecked evaluation used by the integrator, whose trial stages may step a
// hair outside the unit square before being rejected.
inline Derivative strategic_rhs(double u, double v, const ModelParams &m) {
  const double free_share = 1.0 - u - v;
  return {u * free_share - m.a() * m.c1() * u,
          m.p() * v * free_share - m.a() * u};
}

} // namespace detail

} // namespace lvsim

#endif // LVSIM_MODEL_HPP_
