#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "delone/analysis.hpp"
#include "delone/chaos.hpp"
#include "delone/errors.hpp"

using namespace delone;
using namespace delone::chaos;

namespace {

const surface::SurfaceGroup& group() {
    static const surface::SurfaceGroup g = surface::standard_surface();
    return g;
}

double mu() { return group().injectivity_radius_at_base(); }

bool axis_meets_polygon(const hyp::Geodesic& axis) {
    double lo = 1e300, hi = -1e300;
    for (const auto& v : group().polygon().vertices) {
        const double s = hyp::project_to_geodesic(axis, v).s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return lo <= 1e-7 && hi >= -1e-7;
}

}  // namespace

TEST(Closed, ShortestLengthIsTheSystole) {
    const auto closed = enumerate_closed(group(), 6.0);
    ASSERT_FALSE(closed.empty());
    double systole = 1e300;
    for (const auto& p : surface::group_ball(group(), 8.0)) {
        if (p.word_length > 0 && p.element.abs_trace() > 2.0 + 1e-9) {
            systole = std::min(systole, hyp::translation_length(p.element));
        }
    }
    EXPECT_NEAR(closed.front().length, systole, 1e-9);
    EXPECT_NEAR(closed.front().length, 2.0 * std::acosh(2.0), 1e-9);
}

TEST(Closed, RepresentativesAreWellFormed) {
    const auto closed = enumerate_closed(group(), 6.0);
    for (std::size_t i = 0; i < closed.size(); ++i) {
        const auto& c = closed[i];
        EXPECT_LE(c.length, 6.0);
        EXPECT_NEAR(hyp::translation_length(c.element), c.length, 1e-9);
        EXPECT_TRUE(axis_meets_polygon(c.axis));
        EXPECT_LT(hyp::dist(c.element.apply(c.axis.at(0.0)), c.axis.at(c.length)), 1e-8);
        if (i > 0) EXPECT_LE(closed[i - 1].length, c.length);
    }
}

TEST(Closed, EveryShortClassIsListedOnce) {
    const double cutoff = 4.2;
    const auto closed = enumerate_closed(group(), cutoff);
    const double rc = group().circumradius();
    const auto conjugators = surface::group_ball(group(), 2.0 * rc + 0.5 * cutoff + 0.01);
    // Index, per representative, its conjugates h r h⁻¹ by their base-point image.
    auto class_of = [&](const hyp::Isometry& g) {
        int found = -1;
        for (std::size_t i = 0; i < closed.size(); ++i) {
            if (std::abs(closed[i].element.abs_trace() - g.abs_trace()) > 1e-7) continue;
            for (const auto& h : conjugators) {
                const hyp::Isometry c = h.element * closed[i].element * h.element.inverse();
                if (hyp::dist(c.apply(group().base_point()), g.apply(group().base_point())) < 1e-6) {
                    EXPECT_EQ(found, -1) << "two representatives are conjugate";
                    found = static_cast<int>(i);
                    break;
                }
            }
        }
        return found;
    };
    const double ball_r = 2.0 * std::asinh(std::cosh(rc) * std::sinh(0.5 * cutoff));
    std::size_t checked = 0;
    for (const auto& p : surface::group_ball(group(), ball_r)) {
        if (p.word_length == 0 || p.element.abs_trace() <= 2.0 + 1e-9) continue;
        const auto ax = hyp::axis_and_length(p.element);
        if (ax.translation_length > cutoff || !axis_meets_polygon(ax.axis)) continue;
        // Non-primitive elements (squares of the systole class and beyond) are above this cutoff.
        ++checked;
        EXPECT_GE(class_of(p.element), 0);
    }
    EXPECT_GT(checked, closed.size());
    for (const auto& c : closed) EXPECT_GE(class_of(c.element), 0);
}

TEST(Spectrum, DistinctSortedLengths) {
    const auto spec = length_spectrum(enumerate_closed(group(), 8.0), 8.0);
    ASSERT_GE(spec.lengths.size(), 2U);
    for (std::size_t i = 1; i < spec.lengths.size(); ++i) EXPECT_GT(spec.lengths[i] - spec.lengths[i - 1], 1e-6);
    EXPECT_FALSE(dalbo_check(spec, 0.01, 1e-6).arithmetic_like);
}

TEST(Spectrum, DalboOnSyntheticSpectra) {
    LengthSpectrum s{{2.0, 4.0, 6.0, 10.0}, 10.0};
    const auto d = dalbo_check(s, 0.5, 1e-9);
    EXPECT_TRUE(d.arithmetic_like);
    ASSERT_TRUE(d.witness_omega);
    EXPECT_NEAR(*d.witness_omega, 2.0, 1e-12);
    LengthSpectrum t{{1.0, std::sqrt(2.0)}, 2.0};
    EXPECT_FALSE(dalbo_check(t, 0.01, 1e-6).arithmetic_like);
    EXPECT_THROW(dalbo_check(LengthSpectrum{}, 0.1, 1e-6), InvalidArgument);
}

TEST(Tau, ZeroInsideADisk) {
    double closest = 0.0;
    const auto t = tau_of(group(), {group().base_point(), 0.3}, 0.5 * mu(), 10.0, &closest);
    ASSERT_TRUE(t.has_value());
    EXPECT_DOUBLE_EQ(*t, 0.0);
    EXPECT_NEAR(closest, 0.0, 1e-12);
}

TEST(Tau, MatchesDirectChordComputation) {
    // τ from the first parameter where ℓ_v is strictly inside a disk, found by marching.
    const double rho = 0.95 * mu();
    const auto pts = sample_polygon_points(group(), 6);
    const auto ball = surface::group_ball(group(), group().circumradius() + 6.0 + rho + 0.1);
    for (const auto& p : pts) {
        const hyp::UnitTangent v{p, 1.1};
        const auto tau = tau_of(group(), v, rho, 6.0);
        ASSERT_TRUE(tau.has_value());
        const auto line = hyp::Geodesic::from_tangent(v);
        std::vector<hyp::HPoint> near;
        for (const auto& q : ball) {
            if (hyp::dist_to_segment(line, -6.0, 6.0, q.point) < rho) near.push_back(q.point);
        }
        double marched = 1e300;
        for (double t = 0.0; t <= 6.0 && marched > 1e299; t += 1e-3) {
            for (double sgn : {1.0, -1.0}) {
                for (const auto& q : near) {
                    if (hyp::dist(line.at(sgn * t), q) < rho) marched = std::min(marched, t);
                }
            }
        }
        EXPECT_NEAR(*tau, marched, 2e-3);
    }
}

TEST(Conditions, Verdicts) {
    EXPECT_EQ(condition_check(group(), 1.05 * mu(), 4, 4, 10.0).verdict, Verdict::fail_A);
    const auto ok = condition_check(group(), 0.95 * mu(), 8, 8, 20.0);
    EXPECT_TRUE(ok.condition_a);
    EXPECT_EQ(ok.verdict, Verdict::pass);
    EXPECT_LT(ok.tau.sup_estimate, 20.0);
    EXPECT_EQ(ok.tau.samples, 64U);
    // A tiny horizon truncates.
    EXPECT_EQ(condition_check(group(), 0.5 * mu(), 4, 4, 0.01).verdict, Verdict::B_unverified);
    EXPECT_EQ(to_string(Verdict::B_suspect), "B_suspect");
}

TEST(Approx, FindsVerifiedClosedGeodesic) {
    cp::TubeConfig cfg;
    cfg.rho = 0.95 * mu();
    const auto ell = hyp::random_geodesic(2, group().base_point());
    const auto res = approx_by_closed(group(), ell, 1.0, cfg);
    EXPECT_TRUE(res.verified);
    EXPECT_LE(res.k.word_length, 12);
    EXPECT_LT(hyp::dist(res.k.element.apply(res.k.axis.at(0.0)), res.k.axis.at(res.k.length)), 1e-6);
    // Independent re-check of the reported verdict.
    const double w = 1.0 + 1.0 + 1.0;
    const auto a = analysis::from_projected(cp::cut_project(group(), ell, cfg, -w, w));
    const auto b = analysis::from_projected(reflect(cp::cut_project(group(), res.k.axis, cfg, -w, w)));
    EXPECT_TRUE(analysis::entourage_member(a, b, analysis::Entourage::from_r(1, 1.0)));
    EXPECT_THROW(approx_by_closed(group(), ell, 0.0, cfg), InvalidArgument);
}

TEST(Match, ShiftedGeodesicIsFound) {
    cp::TubeConfig cfg;
    cfg.rho = 0.95 * mu();
    const auto ell = hyp::random_geodesic(5, group().base_point());
    const auto same = translate_match(group(), ell, ell, 1.0, 20.0, cfg);
    EXPECT_TRUE(same.verified);
    EXPECT_DOUBLE_EQ(same.a, 0.0);
    const auto shifted = translate_match(group(), ell, ell.shifted(3.0), 1.0, 20.0, cfg);
    EXPECT_TRUE(shifted.verified);
    EXPECT_LE(std::abs(shifted.a), 3.0 + 1e-9);
}

TEST(Reflect, IsAnInvolution) {
    cp::TubeConfig cfg;
    cfg.rho = 0.9 * mu();
    const auto ps = cp::cut_project(group(), hyp::random_geodesic(3, group().base_point()), cfg, -10, 15);
    const auto rr = reflect(reflect(ps));
    EXPECT_EQ(rr.coords, ps.coords);
    EXPECT_EQ(rr.boundary_flags, ps.boundary_flags);
    const auto r = reflect(ps);
    EXPECT_DOUBLE_EQ(r.t_lo, -15.0);
    EXPECT_TRUE(std::is_sorted(r.coords.begin(), r.coords.end()));
}

TEST(Sampling, PointsLieInPolygon) {
    const auto pts = sample_polygon_points(group(), 50);
    ASSERT_EQ(pts.size(), 50U);
    for (const auto& p : pts) EXPECT_LE(hyp::dist(p, group().polygon().center), group().circumradius() + 1e-9);
    EXPECT_TRUE(polygon_contains(group(), group().polygon().center));
    EXPECT_FALSE(polygon_contains(group(), hyp::polar_from_center(2.0, 0.0)));
    EXPECT_TRUE(polygon_contains(group(), hyp::polar_from_center(1.5, 0.0)));
}

TEST(Recurrence, FractionGrowsWithTolerance) {
    const auto ell = hyp::random_geodesic(1, group().base_point());
    const double a = recurrence_fraction(group(), ell, 50.0, 0.3, 6, 6);
    const double b = recurrence_fraction(group(), ell, 50.0, 0.8, 6, 6);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(b, 1.0);
    EXPECT_LE(a, b);
}
