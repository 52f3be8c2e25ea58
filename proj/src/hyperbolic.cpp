#include "delone/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "delone/errors.hpp"

namespace delone::hyp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Complex = std::complex<double>;

Complex as_complex(HPoint z) { return {z.x, z.y}; }

// Sends alpha to 0 and omega to ∞ (orientation preserving).
Isometry endpoint_frame(BoundaryPoint alpha, BoundaryPoint omega) {
    if (alpha.infinite && omega.infinite) {
        throw InvalidArgument("geodesic endpoints coincide (both infinite)");
    }
    if (alpha.infinite) return Isometry(0.0, -1.0, 1.0, -omega.value);
    if (omega.infinite) return Isometry(1.0, -alpha.value, 0.0, 1.0);
    if (alpha.value == omega.value) {
        throw InvalidArgument("geodesic endpoints coincide");
    }
    const double sigma = alpha.value > omega.value ? 1.0 : -1.0;
    return Isometry(sigma, -sigma * alpha.value, 1.0, -omega.value);
}

// Rescales so that the foot of the perpendicular from `w` (already in the
// endpoint frame) lands on i.
Isometry anchor_at_foot(const Isometry& frame, HPoint w_in_frame) {
    const double r = std::hypot(w_in_frame.x, w_in_frame.y);
    return Isometry::scaling(1.0 / std::sqrt(r)) * frame;
}

}  // namespace

HPoint make_point(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
        throw InvalidArgument("point is not in the upper half-plane");
    }
    return {x, y};
}

bool approx_equal(BoundaryPoint a, BoundaryPoint b, double tol) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return std::abs(a.value - b.value) <= tol;
}

double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double angle_between(double a, double b) {
    const double d = normalize_angle(a - b);
    return std::min(d, kTwoPi - d);
}

UnitTangent make_tangent(HPoint base, double direction) {
    return {make_point(base.x, base.y), normalize_angle(direction)};
}

// ---------------------------------------------------------------- Isometry

Isometry::Isometry(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!std::isfinite(det) || !(det > 0.0)) {
        throw InvalidArgument("isometry needs a positive finite determinant");
    }
    const double s = 1.0 / std::sqrt(det);
    m_ = {a * s, b * s, c * s, d * s};
    canonicalize_sign();
}

void Isometry::canonicalize_sign() {
    const double lead = m_[0] != 0.0 ? m_[0] : (m_[1] != 0.0 ? m_[1] : m_[2]);
    if (lead < 0.0) {
        for (double& e : m_) e = -e;
    }
}

Isometry Isometry::scaling(double lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }

Isometry Isometry::rotation_about_i(double angle) {
    const double h = 0.5 * angle;
    return {std::cos(h), std::sin(h), -std::sin(h), std::cos(h)};
}

double Isometry::abs_trace() const { return std::abs(trace()); }

HPoint Isometry::apply(HPoint z) const {
    const auto [a, b, c, d] = m_;
    const double nr = a * z.x + b;
    const double dr = c * z.x + d;
    const double di = c * z.y;
    const double den = dr * dr + di * di;
    return {(nr * dr + a * z.y * di) / den, z.y / den};
}

BoundaryPoint Isometry::apply(BoundaryPoint p) const {
    const auto [a, b, c, d] = m_;
    if (p.infinite) {
        return c == 0.0 ? BoundaryPoint::infinity() : BoundaryPoint::at(a / c);
    }
    const double den = c * p.value + d;
    if (den == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::at((a * p.value + b) / den);
}

UnitTangent Isometry::apply(const UnitTangent& v) const {
    const Complex den = Complex(m_[2]) * as_complex(v.base) + Complex(m_[3]);
    return {apply(v.base), normalize_angle(v.direction - 2.0 * std::arg(den))};
}

Isometry Isometry::inverse() const {
    Isometry out;
    out.m_ = {m_[3], -m_[1], -m_[2], m_[0]};
    out.canonicalize_sign();
    return out;
}

Isometry operator*(const Isometry& g, const Isometry& h) {
    const auto& p = g.m_;
    const auto& q = h.m_;
    Isometry out;
    out.m_ = {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
              p[2] * q[1] + p[3] * q[3]};
    // The product of determinant-one factors has determinant one. Long words
    // have entries so large that ad − bc is pure cancellation noise, so the
    // drift correction is applied only while the determinant is still computable.
    const auto& m = out.m_;
    const double bc = m[1] * m[2];
    const double det = std::fma(m[0], m[3], -bc) - std::fma(m[1], m[2], -bc);
    if (std::abs(det - 1.0) < 1e-6) {
        const double s = 1.0 / std::sqrt(det);
        for (double& e : out.m_) e *= s;
    }
    out.canonicalize_sign();
    return out;
}

double Isometry::distance_to(const Isometry& other) const {
    double plus = 0.0;
    double minus = 0.0;
    for (int k = 0; k < 4; ++k) {
        plus = std::max(plus, std::abs(m_[k] - other.m_[k]));
        minus = std::max(minus, std::abs(m_[k] + other.m_[k]));
    }
    return std::min(plus, minus);
}

// ---------------------------------------------------------------- metric

double dist(HPoint p, HPoint q) {
    const double chord = std::hypot(p.x - q.x, p.y - q.y);
    return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y * q.y)));
}

// ---------------------------------------------------------------- Geodesic

Geodesic Geodesic::from_endpoints(BoundaryPoint alpha, BoundaryPoint omega, HPoint anchor,
                                  const NumericPolicy& policy) {
    const Isometry frame = endpoint_frame(alpha, omega);
    const HPoint w = frame.apply(anchor);
    if (std::abs(std::asinh(w.x / w.y)) > policy.curve_tol) {
        throw InvalidArgument("anchor does not lie on the geodesic");
    }
    return Geodesic(anchor_at_foot(frame, w));
}

Geodesic Geodesic::between(BoundaryPoint alpha, BoundaryPoint omega, HPoint reference) {
    const Isometry frame = endpoint_frame(alpha, omega);
    return Geodesic(anchor_at_foot(frame, frame.apply(reference)));
}

Geodesic Geodesic::from_tangent(const UnitTangent& v) {
    const double sy = std::sqrt(v.base.y);
    const Isometry to_i(1.0 / sy, -v.base.x / sy, 0.0, sy);
    const double half_pi = 0.5 * std::numbers::pi;
    return Geodesic(Isometry::rotation_about_i(half_pi - v.direction) * to_i);
}

Geodesic Geodesic::through(HPoint p, HPoint q) {
    if (p == q) throw InvalidArgument("geodesic through two equal points");
    const double sy = std::sqrt(p.y);
    const Isometry to_i(1.0 / sy, -p.x / sy, 0.0, sy);
    const HPoint w = to_i.apply(q);
    double direction;
    if (w.x == 0.0) {
        direction = w.y > 1.0 ? 0.5 * std::numbers::pi : 1.5 * std::numbers::pi;
    } else {
        // Circle through i and w centred at c on the real axis; tangent at i is (1, c).
        const double c = (w.x * w.x + w.y * w.y - 1.0) / (2.0 * w.x);
        direction = w.x > 0.0 ? std::atan2(c, 1.0) : std::atan2(-c, -1.0);
    }
    return from_tangent({p, normalize_angle(direction)});
}

BoundaryPoint Geodesic::alpha() const { return frame_.inverse().apply(BoundaryPoint::at(0.0)); }

BoundaryPoint Geodesic::omega() const { return frame_.inverse().apply(BoundaryPoint::infinity()); }

HPoint Geodesic::at(double t) const { return frame_.inverse().apply(HPoint{0.0, std::exp(t)}); }

UnitTangent Geodesic::tangent_at(double t) const {
    return frame_.inverse().apply(UnitTangent{{0.0, std::exp(t)}, 0.5 * std::numbers::pi});
}

Geodesic Geodesic::reversed() const { return Geodesic(Isometry(0.0, -1.0, 1.0, 0.0) * frame_); }

Geodesic Geodesic::shifted(double dt) const {
    return Geodesic(Isometry::scaling(std::exp(-0.5 * dt)) * frame_);
}

Geodesic Geodesic::transformed(const Isometry& g) const { return Geodesic(frame_ * g.inverse()); }

GeodesicCoords project_to_geodesic(const Geodesic& ell, HPoint z) {
    return coords_in_frame(ell.frame().apply(z));
}

GeodesicCoords coords_in_frame(HPoint w) {
    return {std::log(std::hypot(w.x, w.y)), std::asinh(-w.x / w.y)};
}

double distance_from_coords(GeodesicCoords c, double t_foot) {
    const double a = std::abs(c.s);
    const double b = std::abs(c.t - t_foot);
    if (a + b > 20.0) {
        return a + b + std::log(0.5 * (1.0 + std::exp(-2.0 * a)) * (1.0 + std::exp(-2.0 * b)));
    }
    return std::acosh(std::cosh(a) * std::cosh(b));
}

double dist_to_segment(const Geodesic& ell, double t0, double t1, HPoint z) {
    return dist_to_segment(project_to_geodesic(ell, z), t0, t1);
}

double dist_to_segment(GeodesicCoords c, double t0, double t1) {
    if (c.t < t0) return distance_from_coords(c, t0);
    if (c.t > t1) return distance_from_coords(c, t1);
    return std::abs(c.s);
}

// ---------------------------------------------------------------- axes

double translation_length(const Isometry& g, const NumericPolicy& policy) {
    const double tr = g.abs_trace();
    if (!(tr > 2.0 + policy.hyperbolic_trace_tol)) {
        throw NonHyperbolicElement("|trace| = " + std::to_string(tr) + " is not > 2");
    }
    return 2.0 * std::acosh(0.5 * tr);
}

Axis axis_and_length(const Isometry& g, HPoint reference, const NumericPolicy& policy) {
    const double length = translation_length(g, policy);
    auto [a, b, c, d] = g.entries();
    if (a + d < 0.0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    BoundaryPoint attracting;
    BoundaryPoint repelling;
    if (c == 0.0) {
        const BoundaryPoint finite = BoundaryPoint::at(b / (d - a));
        if (std::abs(a) > std::abs(d)) {
            attracting = BoundaryPoint::infinity();
            repelling = finite;
        } else {
            attracting = finite;
            repelling = BoundaryPoint::infinity();
        }
    } else {
        const double tr = a + d;
        const double disc = std::sqrt(tr * tr - 4.0);
        // Fixed points (a − d ± disc)/(2c); the '+' root has multiplier < 1 and
        // attracts. Each root is taken from whichever formula avoids cancellation.
        double z_plus;
        double z_minus;
        if (a - d >= 0.0) {
            z_plus = (a - d + disc) / (2.0 * c);
            z_minus = -2.0 * b / (a - d + disc);
        } else {
            z_minus = (a - d - disc) / (2.0 * c);
            z_plus = -2.0 * b / (a - d - disc);
        }
        attracting = BoundaryPoint::at(z_plus);
        repelling = BoundaryPoint::at(z_minus);
    }
    return {Geodesic::between(repelling, attracting, reference), length};
}

// ---------------------------------------------------------------- disk model

DiskPoint to_disk(HPoint z) {
    // i·(z − i)/(z + i): the imaginary axis becomes the vertical diameter with
    // ∞ at the top.
    const Complex w = Complex(0.0, 1.0) * (as_complex(z) - Complex(0.0, 1.0)) /
                      (as_complex(z) + Complex(0.0, 1.0));
    return {w.real(), w.imag()};
}

HPoint from_disk(DiskPoint p) {
    if (!(p.u * p.u + p.v * p.v < 1.0)) throw InvalidArgument("point is not inside the unit disk");
    const Complex w0 = Complex(p.u, p.v) / Complex(0.0, 1.0);
    const Complex z = Complex(0.0, 1.0) * (1.0 + w0) / (1.0 - w0);
    return {z.real(), z.imag()};
}

BoundaryPoint boundary_from_disk_angle(double theta) {
    const Complex w0 = std::polar(1.0, theta) / Complex(0.0, 1.0);
    const Complex den = 1.0 - w0;
    if (std::abs(den) < 1e-300) return BoundaryPoint::infinity();
    return BoundaryPoint::at((Complex(0.0, 1.0) * (1.0 + w0) / den).real());
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Geodesic random_geodesic(std::uint64_t seed, HPoint reference) {
    std::mt19937_64 rng(seed);
    const double a = kTwoPi * unit_uniform(rng());
    double b = kTwoPi * unit_uniform(rng());
    while (angle_between(a, b) < 1e-6) b = kTwoPi * unit_uniform(rng());
    return Geodesic::between(boundary_from_disk_angle(a), boundary_from_disk_angle(b), reference);
}

HPoint polar_from_center(double r, double theta) {
    const double e = std::tanh(0.5 * r);
    return from_disk({e * std::cos(theta), e * std::sin(theta)});
}

}  // namespace delone::hyp
