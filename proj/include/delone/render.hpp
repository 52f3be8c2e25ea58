#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delone/hyperbolic.hpp"
#include "delone/pointset.hpp"

/// SVG figures: a Poincaré-disk view of the polygon, a tube and its points,
/// and a tick plot for one-dimensional sets. Output depends only on the input.
namespace delone::render {

struct DiskScene {
    std::vector<hyp::HPoint> polygon;  ///< drawn as geodesic arcs, one <path> per side
    std::optional<hyp::Geodesic> ell;
    double rho = 0.0;                  ///< tube half-width; 0 draws no band
    double extent = 8.0;               ///< ℓ is drawn for |t| ≤ extent
    std::vector<hyp::HPoint> orbit_points;
    std::vector<double> projected;     ///< parameters along ℓ
};

std::string disk_svg(const DiskScene& scene, int size = 600);

/// Ticks at each point of a dim-1 set over its window; flagged points in red.
/// Throws InvalidArgument for other dimensions.
std::string line_svg(const WindowedPointSet& s, int width = 900);

/// SVG path for the geodesic arc between two interior points, in disk
/// coordinates scaled by `scale` about (`cx`, `cy`) with y pointing down.
std::string arc_path(hyp::HPoint p, hyp::HPoint q, double cx, double cy, double scale);

}  // namespace delone::render
