#include "lvsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lvsim/parallel.hpp"
#include "lvsim/random.hpp"

namespace lvsim {

std::string to_string(EquilibriumKind kind) {
  switch (kind) {
  case EquilibriumKind::Source:
    return "Source";
  case EquilibriumKind::Sink:
    return "Sink";
  case EquilibriumKind::Saddle:
    return "Saddle";
  case EquilibriumKind::DegenerateNullEigenvalue:
    return "DegenerateNullEigenvalue";
  }
  return "Unknown";
}

std::string to_string(RegionLabel label) {
  switch (label) {
  case RegionLabel::A1:
    return "A1";
  case RegionLabel::A2:
    return "A2";
  case RegionLabel::A3:
    return "A3";
  case RegionLabel::A4:
    return "A4";
  }
  return "Unknown";
}

std::string to_string(StrategyAdvice advice) {
  switch (advice) {
  case StrategyAdvice::Indifferent:
    return "Indifferent";
  case StrategyAdvice::SmallA:
    return "SmallA";
  case StrategyAdvice::LargeA:
    return "LargeA";
  case StrategyAdvice::ZeroThenLargeA:
    return "ZeroThenLargeA";
  }
  return "Unknown";
}

Matrix2 jacobian(const State &s, const ModelParams &m) {
  const double u = s.u;
  const double v = s.v;
  return {{{1.0 - 2.0 * u - v - m.ac(), -u},
           {-m.p() * v - m.a(), m.p() * (1.0 - u - 2.0 * v)}}};
}

std::array<std::complex<double>, 2> eigenvalues(const Matrix2 &j) {
  const double half_trace = 0.5 * (j[0][0] + j[1][1]);
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  // Discriminant written as a squared half-difference so that triangular
  // matrices give exact diagonal eigenvalues.
  const double half_diff = 0.5 * (j[0][0] - j[1][1]);
  const double disc = half_diff * half_diff + j[0][1] * j[1][0];
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    // Larger-magnitude root first, the other from the product to avoid
    // cancellation.
    const double big = half_trace + std::copysign(root, half_trace);
    const double small = big != 0.0 ? det / big : half_trace - root;
    return {std::complex<double>(big, 0.0), std::complex<double>(small, 0.0)};
  }
  const double imag = std::sqrt(-disc);
  return {std::complex<double>(half_trace, imag),
          std::complex<double>(half_trace, -imag)};
}

EquilibriumKind classify_eigenvalues(const std::array<std::complex<double>, 2> &ev) {
  const double r0 = ev[0].real();
  const double r1 = ev[1].real();
  if (std::abs(r0) < kNullEigenvalueTolerance ||
      std::abs(r1) < kNullEigenvalueTolerance) {
    return EquilibriumKind::DegenerateNullEigenvalue;
  }
  if (r0 > 0.0 && r1 > 0.0) return EquilibriumKind::Source;
  if (r0 < 0.0 && r1 < 0.0) return EquilibriumKind::Sink;
  return EquilibriumKind::Saddle;
}

EquilibriumReport analyze_equilibrium(const State &point, const ModelParams &m) {
  EquilibriumReport report;
  report.point = point;
  report.eigenvalues = eigenvalues(jacobian(point, m));
  report.kind = classify_eigenvalues(report.eigenvalues);
  return report;
}

std::optional<State> interior_saddle(const ModelParams &m) {
  const double ac = m.ac();
  if (!(ac > 0.0 && ac < 1.0)) return std::nullopt;
  const double pc = m.p() * m.c1();
  const double v = (1.0 - ac) / (1.0 + pc);
  return State{v * pc, v};
}

std::vector<EquilibriumReport> find_equilibria(const ModelParams &m) {
  std::vector<EquilibriumReport> out;
  out.push_back(analyze_equilibrium({0.0, 0.0}, m));
  out.push_back(analyze_equilibrium({0.0, 1.0}, m));
  if (auto saddle = interior_saddle(m)) {
    out.push_back(analyze_equilibrium(*saddle, m));
  }
  return out;
}

double nullcline_v(double v, const ModelParams &m) {
  if (v < 0.0 || v > 1.0) {
    throw std::domain_error("nullcline_v expects v in [0,1]");
  }
  const double denom = m.p() * v + m.a();
  if (denom == 0.0) {
    throw std::domain_error("nullcline_v is 0/0 at a = 0, v = 0");
  }
  return 1.0 - (m.p() * v * v + m.a()) / denom;
}

UNullcline nullcline_u(const ModelParams &m) {
  UNullcline out;
  const double offset = 1.0 - m.ac();
  if (offset >= 0.0) {
    out.line_offset = offset;
    out.degenerate_corner = offset == 0.0;
  }
  return out;
}

namespace {

int sign_with_tolerance(double x, double tol) {
  if (std::abs(x) <= tol) return 0;
  return x > 0.0 ? 1 : -1;
}

bool matches(RegionLabel label, int du, int dv) {
  switch (label) {
  case RegionLabel::A1:
    return du <= 0 && dv >= 0;
  case RegionLabel::A2:
    return du <= 0 && dv <= 0;
  case RegionLabel::A3:
    return du >= 0 && dv <= 0;
  case RegionLabel::A4:
    return du >= 0 && dv >= 0;
  }
  return false;
}

} // namespace

RegionClassification classify_region(const State &s, const ModelParams &m,
                                     double zero_tol) {
  const Derivative d = strategic_field(s, m);
  const int du = sign_with_tolerance(d.du_dt, zero_tol);
  const int dv = sign_with_tolerance(d.dv_dt, zero_tol);
  RegionClassification out;
  out.on_boundary = du == 0 || dv == 0;
  for (RegionLabel label :
       {RegionLabel::A1, RegionLabel::A2, RegionLabel::A3, RegionLabel::A4}) {
    if (matches(label, du, dv)) {
      out.label = label;
      break;
    }
  }
  return out;
}

bool in_region(const State &s, const ModelParams &m, RegionLabel label,
               double zero_tol) {
  const Derivative d = strategic_field(s, m);
  return matches(label, sign_with_tolerance(d.du_dt, zero_tol),
                 sign_with_tolerance(d.dv_dt, zero_tol));
}

OmegaLimit omega_limit(const State &initial, const ModelParams &m, double horizon,
                       double tol, IntegrationOptions opts) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  opts.t_end = horizon;
  opts.continue_after_extinction = true;
  opts.record_interval = std::min(opts.record_interval, horizon / 1000.0);

  OmegaLimit out;
  out.trajectory = integrate(initial, m, opts);
  out.state = out.trajectory.final_state();
  const double window_start = 0.9 * horizon;
  for (const Sample &sample : out.trajectory.samples) {
    if (sample.t < window_start) continue;
    out.displacement =
        std::max(out.displacement, std::hypot(sample.state.u - out.state.u,
                                              sample.state.v - out.state.v));
  }
  out.converged =
      out.trajectory.termination.kind == TerminationKind::HorizonReached &&
      out.displacement < tol;
  return out;
}

namespace {

// Draws a start inside A3. With u > 0 fixed, A3 is the set of v in
// [0, 1 - ac - u] where p v (1 - u - v) <= a u, i.e. outside the open
// interval between the roots of that quadratic.
State draw_a3_start(const ModelParams &m, Engine &engine) {
  const double top_u = 1.0 - m.ac();
  const double u = top_u * (1.0 - unit_uniform(engine)); // (0, top_u]
  const double v_max = std::max(0.0, top_u - u);

  double lo_end = v_max;
  double hi_start = v_max;
  const double disc = (1.0 - u) * (1.0 - u) - 4.0 * m.a() * u / m.p();
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    const double r_minus = 0.5 * ((1.0 - u) - root);
    const double r_plus = 0.5 * ((1.0 - u) + root);
    lo_end = std::clamp(r_minus, 0.0, v_max);
    hi_start = std::clamp(r_plus, lo_end, v_max);
  }
  const double lo_len = lo_end;
  const double hi_len = v_max - hi_start;
  const double total = lo_len + hi_len;
  if (total <= 0.0) return {u, 0.0};
  const double pick = total * unit_uniform(engine);
  return {u, pick < lo_len ? pick : hi_start + (pick - lo_len)};
}

} // namespace

TrappingReport check_a3_trapping(const ModelParams &m, std::size_t n_samples,
                                 double horizon, std::uint64_t seed) {
  if (m.ac() == 1.0) {
    throw std::invalid_argument("A3 trapping holds only for a*c1 != 1");
  }
  TrappingReport report;
  // For a*c1 > 1 the region has no interior with u > 0.
  if (n_samples == 0 || m.ac() > 1.0) return report;
  report.n_samples = n_samples;

  std::vector<State> starts(n_samples);
  Engine engine(seed);
  for (State &start : starts) start = draw_a3_start(m, engine);

  IntegrationOptions opts;
  opts.t_end = horizon;
  opts.continue_after_extinction = true;
  opts.record_interval = std::min(opts.record_interval, horizon / 500.0);

  std::vector<std::vector<TrappingViolation>> found(n_samples);
  parallel_for(n_samples, [&](std::size_t k) {
    const Trajectory traj = integrate(starts[k], m, opts);
    for (const Sample &sample : traj.samples) {
      if (!in_region(sample.state, m, RegionLabel::A3, kTrappingTolerance)) {
        found[k].push_back({starts[k], sample.t, sample.state});
      }
    }
  });
  for (auto &list : found) {
    report.violations.insert(report.violations.end(), list.begin(), list.end());
  }
  return report;
}

StrategyAdvice strategy_advice(double p, const State &s) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  const bool saturated = s.u + s.v > 1.0;
  if (p == 1.0) return StrategyAdvice::Indifferent;
  if (p < 1.0) return saturated ? StrategyAdvice::LargeA : StrategyAdvice::SmallA;
  return saturated ? StrategyAdvice::ZeroThenLargeA : StrategyAdvice::LargeA;
}

} // namespace lvsim
