#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "delone/hyperbolic.hpp"
#include "delone/surface.hpp"

/// Projection of the orbit points lying in a tube around a geodesic onto the
/// geodesic's arc-length coordinate.
namespace delone::cp {

enum class TubeMode {
    strict_interior,  ///< |s| < ρ
    plus_boundary,    ///< |s| < ρ, or s = +ρ within boundary_tol
    closed,           ///< |s| ≤ ρ + boundary_tol (diagnostic)
};

std::string to_string(TubeMode mode);
/// Accepts "strict", "strict_interior", "plus", "plus_boundary", "closed".
TubeMode parse_tube_mode(const std::string& name);

struct TubeConfig {
    double rho = 1.0;
    TubeMode mode = TubeMode::plus_boundary;
    double boundary_tol = 1e-9;

    /// Throws InvalidArgument unless rho > 0 and boundary_tol >= 0.
    void validate() const;
};

/// Sorted arc-length coordinates with per-point tangency flags and the orbit
/// point each coordinate came from.
struct ProjectedSet {
    std::vector<double> coords;
    std::vector<bool> boundary_flags;  ///< ||s| − ρ| ≤ boundary_tol
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::vector<surface::TubePoint> provenance;

    std::size_t size() const { return coords.size(); }
    std::size_t boundary_flag_count() const;
};

/// Orbit points z with project_to_geodesic(ell, z) = (t, s), t in [t_lo, t_hi]
/// and s admitted by cfg.mode. Coordinates equal within 1e-12 are merged.
/// Throws InvalidArgument for an empty window; BudgetExceeded from enumeration.
ProjectedSet cut_project(const surface::SurfaceGroup& group, const hyp::Geodesic& ell,
                         const TubeConfig& cfg, double t_lo, double t_hi,
                         const surface::Budget& budget = {});

/// Replaces each pair of consecutive coordinates closer than `threshold` by its
/// midpoint, scanning left to right. Throws TripleCluster when three
/// consecutive coordinates lie within `threshold` of each other.
ProjectedSet merge_close_pairs(const ProjectedSet& ps, double threshold);

}  // namespace delone::cp
