#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "delone/cut_project.hpp"
#include "delone/errors.hpp"

using namespace delone;
using namespace delone::cp;

namespace {

const surface::SurfaceGroup& group() {
    static const surface::SurfaceGroup g = surface::standard_surface();
    return g;
}

double mu() { return group().injectivity_radius_at_base(); }

// Filter a plain group ball by the tube predicate; no tube walk involved.
std::vector<double> brute_force(const hyp::Geodesic& ell, double rho, TubeMode mode, double w) {
    const double reach = hyp::dist(group().base_point(), ell.at(0.0)) + w + rho + 0.1;
    std::vector<double> out;
    for (const auto& p : surface::group_ball(group(), reach)) {
        const auto c = hyp::project_to_geodesic(ell, p.point);
        if (c.t < -w || c.t > w) continue;
        const double tol = 1e-9;
        bool in = false;
        switch (mode) {
            case TubeMode::strict_interior: in = std::abs(c.s) < rho; break;
            case TubeMode::plus_boundary: in = std::abs(c.s) < rho || std::abs(c.s - rho) <= tol; break;
            case TubeMode::closed: in = std::abs(c.s) <= rho + tol; break;
        }
        if (in) out.push_back(c.t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Geodesic having the base point at signed distance s and parameter 0.
hyp::Geodesic geodesic_with_base_at(double s) {
    const hyp::HPoint w{-std::tanh(s), 1.0 / std::cosh(s)};
    const double r = std::sqrt(w.y);
    const hyp::Isometry to_i(1.0 / r, -w.x / r, 0.0, r);
    return hyp::Geodesic().transformed(to_i);
}

}  // namespace

class OracleEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(OracleEquivalence, MatchesBallFilter) {
    const int seed = GetParam();
    const double rho = (0.5 + 0.06 * seed) * mu();
    // A seeded tangent near the base keeps the oracle ball small.
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const hyp::HPoint p{u(rng), std::exp(u(rng))};
    const auto ell = hyp::Geodesic::from_tangent({p, 2.0 * std::numbers::pi * (u(rng) + 0.5)});
    TubeConfig cfg;
    cfg.rho = rho;
    const auto ps = cut_project(group(), ell, cfg, -8.0, 8.0);
    const auto oracle = brute_force(ell, rho, cfg.mode, 8.0);
    ASSERT_EQ(ps.size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(ps.coords[i], oracle[i], 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleEquivalence, ::testing::Range(1, 11));

TEST(CutProject, SeparationLaw) {
    for (double f : {0.5, 0.8, 0.95}) {
        TubeConfig cfg;
        cfg.rho = f * mu();
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto ps = cut_project(group(), hyp::random_geodesic(seed, group().base_point()), cfg, -20, 20);
            ASSERT_GE(ps.size(), 2U);
            for (std::size_t i = 1; i < ps.size(); ++i) {
                EXPECT_GT(ps.coords[i] - ps.coords[i - 1], 2.0 * mu() - 2.0 * cfg.rho - 1e-8);
            }
        }
    }
}

TEST(CutProject, ModesAreNested) {
    const auto ell = hyp::random_geodesic(4, group().base_point());
    TubeConfig cfg;
    cfg.rho = 0.9 * mu();
    cfg.mode = TubeMode::strict_interior;
    const auto a = cut_project(group(), ell, cfg, -30, 30);
    cfg.mode = TubeMode::plus_boundary;
    const auto b = cut_project(group(), ell, cfg, -30, 30);
    cfg.mode = TubeMode::closed;
    const auto c = cut_project(group(), ell, cfg, -30, 30);
    EXPECT_LE(a.size(), b.size());
    EXPECT_LE(b.size(), c.size());
    for (double t : a.coords) EXPECT_TRUE(std::binary_search(b.coords.begin(), b.coords.end(), t));
    for (double t : b.coords) EXPECT_TRUE(std::binary_search(c.coords.begin(), c.coords.end(), t));
}

TEST(CutProject, PositiveBoundaryOnlyInPlusMode) {
    const double rho = 0.7;
    TubeConfig cfg;
    cfg.rho = rho;
    auto contains_zero = [](const ProjectedSet& ps) {
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (std::abs(ps.coords[i]) < 1e-9) return ps.boundary_flags[i] ? 2 : 1;
        }
        return 0;
    };
    const auto left = geodesic_with_base_at(rho);
    ASSERT_NEAR(hyp::project_to_geodesic(left, group().base_point()).s, rho, 1e-12);
    EXPECT_EQ(contains_zero(cut_project(group(), left, cfg, -1, 1)), 2);
    cfg.mode = TubeMode::strict_interior;
    EXPECT_EQ(contains_zero(cut_project(group(), left, cfg, -1, 1)), 0);

    const auto right = geodesic_with_base_at(-rho);
    cfg.mode = TubeMode::plus_boundary;
    EXPECT_EQ(contains_zero(cut_project(group(), right, cfg, -1, 1)), 0);
    cfg.mode = TubeMode::closed;
    EXPECT_EQ(contains_zero(cut_project(group(), right, cfg, -1, 1)), 2);
}

TEST(CutProject, InputValidation) {
    TubeConfig cfg;
    cfg.rho = 0.0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg.rho = 1.0;
    EXPECT_THROW(cut_project(group(), hyp::Geodesic(), cfg, 1.0, 1.0), InvalidArgument);
    EXPECT_EQ(parse_tube_mode("plus"), TubeMode::plus_boundary);
    EXPECT_EQ(parse_tube_mode("strict"), TubeMode::strict_interior);
    EXPECT_EQ(parse_tube_mode(to_string(TubeMode::closed)), TubeMode::closed);
    EXPECT_THROW(parse_tube_mode("open"), InvalidArgument);
}

TEST(CutProject, MergeClosePairs) {
    ProjectedSet ps;
    ps.coords = {0.0, 0.05, 1.0, 2.0, 2.01};
    ps.boundary_flags.assign(5, false);
    ps.t_lo = -1;
    ps.t_hi = 3;
    const auto merged = merge_close_pairs(ps, 0.1);
    ASSERT_EQ(merged.size(), 3U);
    EXPECT_DOUBLE_EQ(merged.coords[0], 0.025);
    EXPECT_DOUBLE_EQ(merged.coords[1], 1.0);
    EXPECT_DOUBLE_EQ(merged.coords[2], 2.005);
    ps.coords = {0.0, 0.04, 0.08, 1.0, 2.0};
    EXPECT_THROW(merge_close_pairs(ps, 0.1), TripleCluster);
}

TEST(CutProject, FarAlongTheGeodesic) {
    // Coordinates stay exact far out, where raw matrices are huge.
    TubeConfig cfg;
    cfg.rho = 0.95 * mu();
    const auto ell = hyp::random_geodesic(2, group().base_point());
    const auto ps = cut_project(group(), ell, cfg, 190.0, 200.0);
    EXPECT_GT(ps.size(), 0U);
    for (double t : ps.coords) {
        EXPECT_GE(t, 190.0);
        EXPECT_LE(t, 200.0);
    }
}
