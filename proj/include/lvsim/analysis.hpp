#ifndef LVSIM_ANALYSIS_HPP_
#define LVSIM_ANALYSIS_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lvsim/integrator.hpp"
#include "lvsim/model.hpp"

namespace lvsim {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Real parts within this distance of zero count as null eigenvalues.
inline constexpr double kNullEigenvalueTolerance = 1e-10;

enum class EquilibriumKind { Source, Sink, Saddle, DegenerateNullEigenvalue };

std::string to_string(EquilibriumKind kind);

struct EquilibriumReport {
  State point;
  std::array<std::complex<double>, 2> eigenvalues;
  EquilibriumKind kind = EquilibriumKind::Source;
};

Matrix2 jacobian(const State &s, const ModelParams &m);

/// Roots of the characteristic polynomial of a 2x2 matrix.
std::array<std::complex<double>, 2> eigenvalues(const Matrix2 &j);

EquilibriumKind classify_eigenvalues(const std::array<std::complex<double>, 2> &ev);

EquilibriumReport analyze_equilibrium(const State &point, const ModelParams &m);

/// Interior saddle ((1-ac) pc / (1+pc), (1-ac) / (1+pc)); present only for
/// a*c1 strictly inside (0,1).
std::optional<State> interior_saddle(const ModelParams &m);

/// (0,0) and (0,1), followed by the interior saddle when it exists.
std::vector<EquilibriumReport> find_equilibria(const ModelParams &m);

/// u-coordinate of the v-nullcline, 1 - (p v^2 + a) / (p v + a).
double nullcline_v(double v, const ModelParams &m);

/*
 * The u-nullcline is the axis u = 0 together with the segment
 * u + v = 1 - a c1 inside the square. The segment is absent when a c1 > 1
 * and collapses onto the origin when a c1 = 1.
 */
struct UNullcline {
  // Offset k of the line u + v = k; empty when the line misses the square.
  std::optional<double> line_offset;
  bool degenerate_corner = false;
};

UNullcline nullcline_u(const ModelParams &m);

enum class RegionLabel { A1, A2, A3, A4 };

std::string to_string(RegionLabel label);

struct RegionClassification {
  RegionLabel label = RegionLabel::A1;
  // Set when either derivative is zero, i.e. the state sits on a nullcline
  // and satisfies more than one of the non-strict region definitions.
  bool on_boundary = false;
};

/// Derivatives with magnitude at most this value are treated as zero.
inline constexpr double kRegionZeroTolerance = 1e-12;

/*
 * Sign regions of the field:
 *   A1: du <= 0, dv >= 0    A2: du <= 0, dv <= 0
 *   A3: du >= 0, dv <= 0    A4: du >= 0, dv >= 0
 * Ties go to the lowest matching index.
 */
RegionClassification classify_region(const State &s, const ModelParams &m,
                                     double zero_tol = kRegionZeroTolerance);

/// Membership in one region's non-strict definition, with `zero_tol` slack.
bool in_region(const State &s, const ModelParams &m, RegionLabel label,
               double zero_tol = kRegionZeroTolerance);

struct OmegaLimit {
  State state;
  bool converged = false;
  // Largest distance between the terminal state and any sample in the
  // final tenth of the horizon.
  double displacement = 0.0;
  Trajectory trajectory;
};

/// Terminal state of an absorbing-boundary run, flagged as converged when it
/// moved less than `tol` over the last 10% of `horizon`.
OmegaLimit omega_limit(const State &initial, const ModelParams &m, double horizon,
                       double tol = 1e-6,
                       IntegrationOptions opts = IntegrationOptions{});

struct TrappingViolation {
  State initial;
  double time = 0.0;
  State state;
};

struct TrappingReport {
  std::size_t n_samples = 0;
  std::vector<TrappingViolation> violations;
};

/// Derivative slack used when testing whether a sample still lies in A3.
inline constexpr double kTrappingTolerance = 1e-9;

/*
 * Draws n_samples starts from A3 (u uniform on (0, 1 - ac), v uniform on
 * the admissible part of its column), integrates each to `horizon` with
 * absorbing boundaries and lists every sample seen outside A3 afterwards.
 * Throws std::invalid_argument when a c1 = 1.
 */
TrappingReport check_a3_trapping(const ModelParams &m, std::size_t n_samples,
                                 double horizon, std::uint64_t seed = 1);

enum class StrategyAdvice { Indifferent, SmallA, LargeA, ZeroThenLargeA };

std::string to_string(StrategyAdvice advice);

StrategyAdvice strategy_advice(double p, const State &s);

} // namespace lvsim

#endif // LVSIM_ANALYSIS_HPP_
