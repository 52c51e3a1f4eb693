#ifndef LVSIM_SVG_HPP_
#define LVSIM_SVG_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvsim/analysis.hpp"
#include "lvsim/integrator.hpp"

namespace lvsim::svg {

// Plain SVG 1.1 documents. Renderers only rescale and print coordinates.

/// Trajectory in the (u, v) plane on fixed axes [0,1] x [0,1].
std::string phase_plot(std::span<const Sample> samples, std::string_view title);

/// u(t) and v(t) on fixed axes [0, t_end] x [0,1].
std::string time_plot(std::span<const Sample> samples, double t_end,
                      std::string_view title);

struct RegionCell {
  double u = 0.0;
  double v = 0.0;
  RegionLabel label = RegionLabel::A1;
};

struct Polyline {
  std::string name;
  std::vector<State> points;
};

/// Region raster (cells of side 1/grid centred at the given points) with
/// nullcline polylines drawn on top.
std::string region_plot(std::span<const RegionCell> cells, std::size_t grid,
                        std::span<const Polyline> curves, std::string_view title);

} // namespace lvsim::svg

#endif // LVSIM_SVG_HPP_
