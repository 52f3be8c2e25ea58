#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <numbers>

#include "delone/numeric_policy.hpp"

/// Upper-half-plane geometry. Every interior point, isometry and geodesic in the
/// library lives in this model; the Poincaré disk is only used for rendering.
namespace delone::hyp {

/// A point z = x + iy of the upper half-plane, y > 0.
struct HPoint {
    double x = 0.0;
    double y = 1.0;

    friend bool operator==(const HPoint&, const HPoint&) = default;
};

/// Throws InvalidArgument unless y > 0 and both coordinates are finite.
HPoint make_point(double x, double y);

/// An ideal point: a finite real number or ∞.
struct BoundaryPoint {
    double value = 0.0;
    bool infinite = false;

    static constexpr BoundaryPoint at(double v) { return {v, false}; }
    static constexpr BoundaryPoint infinity() { return {0.0, true}; }

    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

bool approx_equal(BoundaryPoint a, BoundaryPoint b, double tol);

/// Point of the unit tangent bundle: base point plus a Euclidean direction
/// angle in [0, 2π). The metric is conformal, so angles are hyperbolic angles.
struct UnitTangent {
    HPoint base;
    double direction = 0.0;
};

UnitTangent make_tangent(HPoint base, double direction);

/// Element of PSL(2;R) acting by z ↦ (az + b)/(cz + d).
///
/// Construction renormalizes to determinant 1 and picks the projective
/// representative whose first nonzero entry among (a, b, c) is positive, so two
/// matrices for the same element compare entrywise.
class Isometry {
public:
    Isometry() = default;
    /// Throws InvalidArgument when ad - bc <= 0 or any entry is not finite.
    Isometry(double a, double b, double c, double d);

    static Isometry identity() { return {}; }
    /// z ↦ λ² z, i.e. diag(λ, 1/λ).
    static Isometry scaling(double lambda);
    /// Elliptic rotation about i by angle `angle` (tangent directions at i turn by `angle`).
    static Isometry rotation_about_i(double angle);

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    const std::array<double, 4>& entries() const { return m_; }

    double trace() const { return m_[0] + m_[3]; }
    double abs_trace() const;

    HPoint apply(HPoint z) const;
    BoundaryPoint apply(BoundaryPoint p) const;
    /// Push-forward of a unit tangent vector.
    UnitTangent apply(const UnitTangent& v) const;

    Isometry inverse() const;

    friend Isometry operator*(const Isometry& g, const Isometry& h);
    friend bool operator==(const Isometry&, const Isometry&) = default;
    friend std::partial_ordering operator<=>(const Isometry& g, const Isometry& h) {
        return g.m_ <=> h.m_;
    }

    /// Max-entry distance to another isometry (both canonical).
    double distance_to(const Isometry& other) const;
    bool approx_identity(double tol) const { return distance_to(identity()) <= tol; }

private:
    void canonicalize_sign();
    std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

/// Hyperbolic distance, computed as 2·asinh(|p−q| / (2√(y_p y_q))) for accuracy
/// at short range.
double dist(HPoint p, HPoint q);

/// Arc-length coordinate along a geodesic and signed normal distance to it.
struct GeodesicCoords {
    double t = 0.0;
    double s = 0.0;
};

/// An oriented geodesic parametrized by arc length.
///
/// Stored as its frame: the isometry carrying the curve onto the imaginary axis,
/// oriented upward, with the anchor (t = 0) sent to i. Then the curve is
/// t ↦ frame⁻¹(i·eᵗ) and all projections reduce to closed forms on the axis.
///
/// Normal orientation: s > 0 on the left of travel, i.e. the side reached by
/// rotating the forward tangent by +π/2. This choice is global.
class Geodesic {
public:
    /// The imaginary axis, oriented upward, anchored at i.
    Geodesic() = default;

    static Geodesic from_frame(const Isometry& frame) { return Geodesic(frame); }
    /// Throws InvalidArgument if alpha == omega or the anchor is off the curve
    /// by more than policy.curve_tol (hyperbolic distance).
    static Geodesic from_endpoints(BoundaryPoint alpha, BoundaryPoint omega, HPoint anchor,
                                   const NumericPolicy& policy = default_policy());
    /// The geodesic from alpha to omega anchored at the foot of the
    /// perpendicular dropped from `reference`.
    static Geodesic between(BoundaryPoint alpha, BoundaryPoint omega, HPoint reference);
    static Geodesic from_tangent(const UnitTangent& v);
    /// Oriented from p toward q, anchored at p. Throws InvalidArgument if p == q.
    static Geodesic through(HPoint p, HPoint q);

    const Isometry& frame() const { return frame_; }

    BoundaryPoint alpha() const;
    BoundaryPoint omega() const;
    HPoint anchor() const { return at(0.0); }
    HPoint at(double t) const;
    UnitTangent tangent_at(double t) const;

    /// Same curve and anchor, opposite orientation.
    Geodesic reversed() const;
    /// Same oriented curve, anchor moved to the point at parameter dt.
    Geodesic shifted(double dt) const;
    /// Image under g (anchor transported, orientation preserved).
    Geodesic transformed(const Isometry& g) const;

private:
    explicit Geodesic(const Isometry& frame) : frame_(frame) {}
    Isometry frame_{};
};

/// Foot-of-perpendicular coordinate t and signed distance s of z relative to ell.
GeodesicCoords project_to_geodesic(const Geodesic& ell, HPoint z);

/// Same as project_to_geodesic for a point already expressed in the geodesic's
/// frame (the curve is the upward imaginary axis).
GeodesicCoords coords_in_frame(HPoint w);

/// Distance from the point with coordinates c to the curve point at t_foot,
/// via cosh d = cosh s · cosh(t − t_foot); stable for large arguments.
double distance_from_coords(GeodesicCoords c, double t_foot);

/// Distance from z to the geodesic segment ell([t0, t1]).
double dist_to_segment(const Geodesic& ell, double t0, double t1, HPoint z);
double dist_to_segment(GeodesicCoords c, double t0, double t1);

/// Axis of a hyperbolic element, oriented so that g translates toward omega,
/// anchored at the foot of the perpendicular from `reference`.
struct Axis {
    Geodesic axis;
    double translation_length = 0.0;
};

/// Throws NonHyperbolicElement when |tr g| <= 2 + policy.hyperbolic_trace_tol.
Axis axis_and_length(const Isometry& g, HPoint reference = {0.0, 1.0},
                     const NumericPolicy& policy = default_policy());

/// Translation length 2·acosh(|tr|/2) without the axis; same error contract.
double translation_length(const Isometry& g, const NumericPolicy& policy = default_policy());

/// Map to the Poincaré disk, w = i(z − i)/(z + i) (i ↦ 0, 2i ↦ (0, 1/3)), and its inverse.
struct DiskPoint {
    double u = 0.0;
    double v = 0.0;
};
DiskPoint to_disk(HPoint z);
/// Throws InvalidArgument unless u² + v² < 1.
HPoint from_disk(DiskPoint w);

/// Point at hyperbolic distance r from the disk centre in direction theta,
/// returned in the upper half-plane (centre ↦ i).
HPoint polar_from_center(double r, double theta);

/// Ideal point at disk-boundary angle theta (the boundary of the disk model).
BoundaryPoint boundary_from_disk_angle(double theta);

/// Reproducible pseudo-random geodesic: two independent uniform boundary angles
/// on the disk from a 64-bit Mersenne Twister seeded with `seed`, oriented
/// from the first to the second and anchored at the foot of the perpendicular
/// from `reference`.
Geodesic random_geodesic(std::uint64_t seed, HPoint reference = {0.0, 1.0});

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
double unit_uniform(std::uint64_t bits);

double normalize_angle(double a);
/// Smallest absolute difference between two direction angles, in [0, π].
double angle_between(double a, double b);

}  // namespace delone::hyp
