#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "delone/errors.hpp"
#include "delone/hyperbolic.hpp"

using namespace delone;
using namespace delone::hyp;

namespace {

constexpr double kPi = std::numbers::pi;

// Textbook formula: cosh d = 1 + |p − q|² / (2 y_p y_q).
double dist_oracle(HPoint p, HPoint q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

std::complex<double> mobius(const Isometry& g, std::complex<double> z) {
    return (g.a() * z + g.b()) / (g.c() * z + g.d());
}

HPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> x(-3.0, 3.0);
    std::uniform_real_distribution<double> ly(-2.0, 2.0);
    return {x(rng), std::exp(ly(rng))};
}

Isometry random_isometry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a * d - b * c > 0.2) return {a, b, c, d};
    }
}

}  // namespace

TEST(Hyperbolic, DistanceMatchesCoshFormula) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const HPoint p = random_point(rng);
        const HPoint q = random_point(rng);
        EXPECT_NEAR(dist(p, q), dist_oracle(p, q), 1e-10 * (1.0 + dist_oracle(p, q)));
    }
    EXPECT_NEAR(dist({0, 1}, {0, std::exp(2.5)}), 2.5, 1e-14);
}

TEST(Hyperbolic, IsometriesPreserveDistance) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const Isometry g = random_isometry(rng);
        const HPoint p = random_point(rng);
        const HPoint q = random_point(rng);
        EXPECT_NEAR(dist(g.apply(p), g.apply(q)), dist(p, q), 1e-8);
    }
}

TEST(Hyperbolic, ApplyMatchesComplexMobius) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const Isometry g = random_isometry(rng);
        const HPoint p = random_point(rng);
        const auto w = mobius(g, {p.x, p.y});
        const HPoint gp = g.apply(p);
        EXPECT_NEAR(gp.x, w.real(), 1e-10 * (1 + std::abs(w)));
        EXPECT_NEAR(gp.y, w.imag(), 1e-10 * (1 + std::abs(w)));
    }
}

TEST(Hyperbolic, ProductAndInverse) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 50; ++i) {
        const Isometry g = random_isometry(rng);
        const Isometry h = random_isometry(rng);
        const HPoint p = random_point(rng);
        const HPoint a = (g * h).apply(p);
        const HPoint b = g.apply(h.apply(p));
        EXPECT_LT(dist(a, b), 1e-8);
        EXPECT_TRUE((g * g.inverse()).approx_identity(1e-10));
    }
}

TEST(Hyperbolic, CanonicalSignMakesNegatedMatrixEqual) {
    const Isometry g(2.0, 1.0, 1.0, 1.0);
    const Isometry h(-2.0, -1.0, -1.0, -1.0);
    EXPECT_EQ(g, h);
}

TEST(Hyperbolic, RejectsBadMatrix) {
    EXPECT_THROW(Isometry(1.0, 2.0, 2.0, 1.0), InvalidArgument);
    EXPECT_THROW(make_point(0.0, -1.0), InvalidArgument);
}

TEST(Hyperbolic, ProjectionRecoversFermiCoordinates) {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 50; ++i) {
        const Geodesic ell = Geodesic::through(random_point(rng), random_point(rng));
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        const double t = u(rng);
        const double s = u(rng);
        // Walk t along ell, then s along the left normal.
        const UnitTangent v = ell.tangent_at(t);
        const Geodesic normal = Geodesic::from_tangent({v.base, normalize_angle(v.direction + kPi / 2)});
        const HPoint z = normal.at(s);
        const GeodesicCoords c = project_to_geodesic(ell, z);
        EXPECT_NEAR(c.t, t, 1e-8);
        EXPECT_NEAR(c.s, s, 1e-8);
        EXPECT_NEAR(dist(z, ell.at(t)), std::abs(s), 1e-8);
        EXPECT_NEAR(distance_from_coords(c, t + 1.0), dist(z, ell.at(t + 1.0)), 1e-8);
    }
}

TEST(Hyperbolic, ArcLengthParametrization) {
    const Geodesic ell = Geodesic::through({0.3, 0.7}, {-1.2, 2.0});
    for (double t : {-4.0, -1.0, 0.5, 3.0}) {
        EXPECT_NEAR(dist(ell.at(0.0), ell.at(t)), std::abs(t), 1e-9);
    }
    EXPECT_NEAR(dist(ell.at(0.0), {0.3, 0.7}), 0.0, 1e-12);
    const Geodesic rev = ell.reversed();
    EXPECT_LT(dist(rev.at(1.3), ell.at(-1.3)), 1e-10);
    EXPECT_LT(dist(ell.shifted(2.0).at(0.5), ell.at(2.5)), 1e-10);
}

TEST(Hyperbolic, AxisOfHyperbolicElement) {
    // Translation length from the trace: 2 acosh(|tr|/2).
    const Isometry g(3.0, 1.0, 2.0, 1.0);
    const Axis ax = axis_and_length(g);
    EXPECT_NEAR(ax.translation_length, 2.0 * std::acosh(2.0), 1e-12);
    for (double t : {-1.0, 0.0, 2.0}) {
        const HPoint p = ax.axis.at(t);
        EXPECT_LT(dist(g.apply(p), ax.axis.at(t + ax.translation_length)), 1e-9);
    }
    EXPECT_THROW(axis_and_length(Isometry::rotation_about_i(0.5)), NonHyperbolicElement);
    EXPECT_THROW(translation_length(Isometry(1.0, 1.0, 0.0, 1.0)), NonHyperbolicElement);
}

TEST(Hyperbolic, DiskConventions) {
    const DiskPoint c = to_disk({0.0, 1.0});
    EXPECT_NEAR(c.u, 0.0, 1e-15);
    EXPECT_NEAR(c.v, 0.0, 1e-15);
    const DiskPoint w = to_disk({0.0, 2.0});
    EXPECT_NEAR(w.u, 0.0, 1e-15);
    EXPECT_NEAR(w.v, 1.0 / 3.0, 1e-15);
    std::mt19937_64 rng(16);
    for (int i = 0; i < 30; ++i) {
        const HPoint p = random_point(rng);
        const HPoint back = from_disk(to_disk(p));
        EXPECT_LT(dist(p, back), 1e-9);
        // Disk distance oracle: 2 atanh |w| from the centre.
        const DiskPoint d = to_disk(p);
        EXPECT_NEAR(dist({0, 1}, p), 2.0 * std::atanh(std::hypot(d.u, d.v)), 1e-8);
    }
    EXPECT_THROW(from_disk({1.0, 0.0}), InvalidArgument);
    const HPoint pc = polar_from_center(1.5, 0.7);
    const DiskPoint pd = to_disk(pc);
    EXPECT_NEAR(std::atan2(pd.v, pd.u), 0.7, 1e-12);
    EXPECT_NEAR(dist({0, 1}, pc), 1.5, 1e-12);
}

TEST(Hyperbolic, RandomGeodesicIsDeterministic) {
    const Geodesic a = random_geodesic(7);
    const Geodesic b = random_geodesic(7);
    EXPECT_EQ(a.frame(), b.frame());
    EXPECT_NE(random_geodesic(8).frame(), a.frame());
    // Anchored at the foot of the perpendicular from i.
    EXPECT_NEAR(project_to_geodesic(a, {0.0, 1.0}).t, 0.0, 1e-9);
}

TEST(Hyperbolic, SegmentDistance) {
    const Geodesic ell;  // imaginary axis
    EXPECT_NEAR(dist_to_segment(ell, -1.0, 1.0, {0.0, std::exp(3.0)}), 2.0, 1e-12);
    const HPoint off = Geodesic::from_tangent({{0.0, 1.0}, 0.0}).at(0.8);
    EXPECT_NEAR(dist_to_segment(ell, -1.0, 1.0, off), 0.8, 1e-12);
}
