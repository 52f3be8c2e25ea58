#include "delone/cut_project.hpp"

#include <algorithm>
#include <cmath>

#include "delone/errors.hpp"

namespace delone::cp {

std::string to_string(TubeMode mode) {
    switch (mode) {
        case TubeMode::strict_interior: return "strict_interior";
        case TubeMode::plus_boundary: return "plus_boundary";
        case TubeMode::closed: return "closed";
    }
    return "unknown";
}

TubeMode parse_tube_mode(const std::string& name) {
    if (name == "strict" || name == "strict_interior") return TubeMode::strict_interior;
    if (name == "plus" || name == "plus_boundary") return TubeMode::plus_boundary;
    if (name == "closed") return TubeMode::closed;
    throw InvalidArgument("unknown tube mode '" + name + "'");
}

void TubeConfig::validate() const {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("rho must be positive");
    if (!(boundary_tol >= 0.0)) throw InvalidArgument("boundary_tol must be nonnegative");
}

std::size_t ProjectedSet::boundary_flag_count() const {
    return static_cast<std::size_t>(std::count(boundary_flags.begin(), boundary_flags.end(), true));
}

namespace {

bool admitted(double s, const TubeConfig& cfg) {
    switch (cfg.mode) {
        case TubeMode::strict_interior: return std::abs(s) < cfg.rho;
        case TubeMode::plus_boundary:
            return std::abs(s) < cfg.rho || (s > 0.0 && std::abs(s - cfg.rho) <= cfg.boundary_tol);
        case TubeMode::closed: return std::abs(s) <= cfg.rho + cfg.boundary_tol;
    }
    return false;
}

}  // namespace

ProjectedSet cut_project(const surface::SurfaceGroup& group, const hyp::Geodesic& ell,
                         const TubeConfig& cfg, double t_lo, double t_hi,
                         const surface::Budget& budget) {
    cfg.validate();
    if (!(t_lo < t_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
        throw InvalidArgument("window must satisfy t_lo < t_hi");
    }
    const auto tube = surface::orbit_near_segment(group, ell, t_lo, t_hi, cfg.rho,
                                                  cfg.boundary_tol + 1e-6, budget);
    ProjectedSet out;
    out.t_lo = t_lo;
    out.t_hi = t_hi;
    for (const surface::TubePoint& tp : tube) {
        const double t = tp.coords.t;
        const double s = tp.coords.s;
        if (t < t_lo || t > t_hi || !admitted(s, cfg)) continue;
        const bool flag = std::abs(std::abs(s) - cfg.rho) <= cfg.boundary_tol;
        if (!out.coords.empty() && t - out.coords.back() <= 1e-12) {
            out.boundary_flags.back() = out.boundary_flags.back() || flag;
            continue;
        }
        out.coords.push_back(t);
        out.boundary_flags.push_back(flag);
        out.provenance.push_back(tp);
    }
    return out;
}

ProjectedSet merge_close_pairs(const ProjectedSet& ps, double threshold) {
    if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be nonnegative");
    const auto& c = ps.coords;
    for (std::size_t i = 0; i + 2 < c.size(); ++i) {
        if (c[i + 2] - c[i] < threshold) {
            throw TripleCluster("three points within " + std::to_string(threshold) + " near t = " +
                                std::to_string(c[i]));
        }
    }
    ProjectedSet out;
    out.t_lo = ps.t_lo;
    out.t_hi = ps.t_hi;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const bool has_prov = i < ps.provenance.size();
        if (i + 1 < c.size() && c[i + 1] - c[i] < threshold) {
            out.coords.push_back(0.5 * (c[i] + c[i + 1]));
            out.boundary_flags.push_back(ps.boundary_flags[i] || ps.boundary_flags[i + 1]);
            if (has_prov) out.provenance.push_back(ps.provenance[i]);
            ++i;
        } else {
            out.coords.push_back(c[i]);
            out.boundary_flags.push_back(ps.boundary_flags[i]);
            if (has_prov) out.provenance.push_back(ps.provenance[i]);
        }
    }
    return out;
}

}  // namespace delone::cp
