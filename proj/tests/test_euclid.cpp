#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "delone/analysis.hpp"
#include "delone/errors.hpp"
#include "delone/euclid.hpp"

using namespace delone;
using namespace delone::euclid;

namespace {

WindowedPointSet from_points(int dim, std::vector<Point> pts, const Box& window) {
    WindowedPointSet s;
    s.dim = dim;
    s.points = std::move(pts);
    s.window = window;
    s.sort_points();
    return s;
}

double min_gap(const std::vector<Point>& pts, int dim) {
    double best = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts[i], pts[j], dim));
    }
    return best;
}

// No grid probe in the region is δ-far from every point.
bool maximal_on_grid(const std::vector<Point>& pts, int dim, const Box& region, double delta, double step) {
    Point p = region.lo;
    for (p[0] = region.lo[0]; p[0] <= region.hi[0] + 1e-12; p[0] += step) {
        for (p[1] = dim > 1 ? region.lo[1] : 0.0; p[1] <= (dim > 1 ? region.hi[1] : 0.0) + 1e-12; p[1] += step) {
            bool near = false;
            for (const Point& q : pts) near = near || distance(p, q, dim) < delta - 1e-9;
            if (!near) return false;
        }
    }
    return true;
}

std::vector<Point> inside(const WindowedPointSet& s, const Box& b) { return s.points_in(b, 1e-12); }

}  // namespace

TEST(Greedy, FillsIntervalWithUnitSpacing) {
    const auto added = greedy_fill({}, 1.0, 1, {Box::interval(0, 10)}, {});
    ASSERT_EQ(added.size(), 11U);
    for (int i = 0; i <= 10; ++i) EXPECT_NEAR(added[static_cast<std::size_t>(i)][0], i, 1e-12);
    const auto around = greedy_fill({{0.5, 0, 0}}, 1.0, 1, {Box::interval(0, 3)}, {});
    ASSERT_EQ(around.size(), 2U);
    EXPECT_NEAR(around[0][0], 1.5, 1e-12);
    EXPECT_NEAR(around[1][0], 2.5, 1e-12);
}

TEST(Greedy, CompletionIsSeparatedAndMaximal) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int dim : {1, 2}) {
        const Box win = Box::cube(dim, 5.0);
        std::vector<Point> seed;
        for (int i = 0; i < 6; ++i) {
            Point p{u(rng), dim > 1 ? u(rng) : 0.0, 0.0};
            if (min_gap([&] { auto v = seed; v.push_back(p); return v; }(), dim) >= 0.8) seed.push_back(p);
        }
        const auto out = greedy_separated_complete(from_points(dim, seed, win), 0.8, Region::of(win));
        EXPECT_GE(min_gap(out.points, dim), 0.8 - 1e-9);
        EXPECT_TRUE(maximal_on_grid(out.points, dim, win, 0.8, 0.05));
        for (const Point& p : seed) {
            EXPECT_TRUE(std::any_of(out.points.begin(), out.points.end(), [&](const Point& q) { return q == p; }));
        }
    }
    EXPECT_THROW(greedy_separated_complete(from_points(1, {{0, 0, 0}, {0.1, 0, 0}}, Box::interval(-2, 2)), 0.5,
                                           Region::of(Box::interval(-2, 2))),
                 NotSeparatedInput);
}

TEST(Extend, InnerKeepsShrunkRegionAndIsDelone) {
    const Box big = Box::cube(2, 8.0);
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-7.5, 7.5);
    std::vector<Point> pts;
    for (int i = 0; i < 40; ++i) {
        Point p{u(rng), u(rng), 0.0};
        auto v = pts;
        v.push_back(p);
        if (min_gap(v, 2) >= 1.0) pts.push_back(p);
    }
    // Completing to a maximal 1-separated set makes S (1.5, 1)-Delone.
    const auto s = greedy_separated_complete(from_points(2, pts, big), 1.0, Region::of(big));
    const Region a = Region::of(Box::cube(2, 4.0));
    const auto out = inner_extend(s, a, 1.5, 1.0);
    const Box core = Box::cube(2, 2.5);
    EXPECT_EQ(inside(out, core), inside(s, core));
    const auto rep = analysis::check_delone(out, 1.5, 1.0);
    EXPECT_TRUE(rep.separated_ok);
    EXPECT_TRUE(rep.dense_ok);
    EXPECT_THROW(inner_extend(s, a, 0.5, 1.0), ParamOrder);
    EXPECT_THROW(inner_extend(s, Region::of(Box::cube(2, 7.5)), 1.5, 1.0), WindowTooSmall);
}

TEST(Extend, GlueKeepsNAndFillsAmbient) {
    const Box a = Box::interval(-3, 3);
    std::vector<Point> n;
    for (double x = -3.0; x <= 3.0; x += 1.2) n.push_back({x, 0, 0});
    const auto s = from_points(1, n, a);
    const auto out = glue_extend(s, Region::of(a), Ambient::euclidean(Box::interval(-10, 10)), 1.2, 1.0);
    EXPECT_EQ(inside(out, a), s.points);
    const auto rep = analysis::check_delone(out, 1.2, 1.0);
    EXPECT_TRUE(rep.separated_ok);
    EXPECT_TRUE(rep.dense_ok);

    const auto torus = glue_extend(s, Region::of(a), Ambient::torus_of_side(1, 12.0), 1.2, 1.0);
    EXPECT_TRUE(torus.torus);
    const auto trep = analysis::check_delone(torus, 1.2, 1.0);
    EXPECT_TRUE(trep.separated_ok);
    EXPECT_TRUE(trep.dense_ok);

    const auto sparse = from_points(1, {{-3, 0, 0}, {3, 0, 0}}, a);
    EXPECT_THROW(glue_extend(sparse, Region::of(a), Ambient::euclidean(Box::interval(-10, 10)), 1.2, 1.0),
                 NotDeloneOnA);
}

TEST(Vq, ConstructionsAreMembers) {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = trial % 2 + 1;
        const double delta = 0.5 + u(rng);
        const double epsilon = delta * (1.0 + u(rng));
        const double alpha = delta / 4.0 * (0.1 + 0.8 * u(rng));
        Point q{};
        do {
            for (int k = 0; k < dim; ++k) q[static_cast<std::size_t>(k)] = 3.0 * (2.0 * u(rng) - 1.0);
        } while (std::sqrt(distance2(q, {}, dim)) <= alpha * 1.01);
        const VqParams p{q, alpha};
        const auto built = vq_construct(p, epsilon, delta, Box::cube(dim, 10.0));
        const auto res = vq_member(built.set, p);
        EXPECT_TRUE(res.member) << "trial " << trial;
        // Independent re-check of the witness: x in S, and the α-disk about x − q is empty.
        ASSERT_TRUE(res.witness.has_value());
        Point centre{};
        for (int k = 0; k < dim; ++k) centre[static_cast<std::size_t>(k)] = (*res.witness)[static_cast<std::size_t>(k)] - q[static_cast<std::size_t>(k)];
        for (const Point& y : built.set.points) EXPECT_GT(distance(y, centre, dim), alpha);
        EXPECT_GE(min_gap(built.set.points, dim), delta - 1e-9);
    }
}

TEST(Vq, ParameterErrors) {
    EXPECT_THROW(vq_construct({{2, 0, 0}, 0.5}, 1.0, 1.0, Box::cube(1, 5)), ParamOrder);
    EXPECT_THROW(vq_construct({{2, 0, 0}, 0.1}, 0.5, 1.0, Box::cube(1, 5)), ParamOrder);
    EXPECT_THROW(vq_construct({{2, 0, 0}, 0.0}, 1.0, 1.0, Box::cube(1, 5)), ParamOrder);
    EXPECT_THROW(vq_construct({{0.1, 0, 0}, 0.15}, 1.0, 1.0, Box::cube(1, 5)), InvalidArgument);
}

TEST(W, LatticeIsMember) {
    const auto z = lattice_points(Box::interval(-40, 40), 1.0);
    const double period = default_grid_period(1, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(period, 6.0);
    const auto res = w_member(z, 1, 1, period, Box::interval(-1, 1));
    EXPECT_TRUE(res.member);
}

class Chaotify : public ::testing::TestWithParam<std::tuple<int, int, int, double>> {};

TEST_P(Chaotify, SatisfiesContract) {
    const auto [dim, m, mp, l] = GetParam();
    const auto s = lattice_points(Box::cube(dim, 30.0), 1.0);
    const auto res = chaotify(s, m, mp, l, 1.0, 1.0);
    const Box core = Box::cube(dim, l);
    EXPECT_EQ(inside(res.s_hat, core), inside(s, core));
    const auto rep = analysis::check_delone(res.s_hat, 1.0, 1.0);
    EXPECT_TRUE(rep.separated_ok);
    EXPECT_TRUE(rep.dense_ok);
    const Box at_witness = Box::cube(dim, 0.0).translated(res.witness.x);
    EXPECT_TRUE(w_member(res.s_hat, m, mp, res.witness.grid_period, at_witness).member);
    EXPECT_TRUE(analysis::entourage_member(s, res.s_hat, analysis::Entourage::from_r(dim, l)));
}

INSTANTIATE_TEST_SUITE_P(Small, Chaotify,
                         ::testing::Values(std::make_tuple(1, 1, 1, 1.0), std::make_tuple(1, 2, 1, 1.0),
                                           std::make_tuple(1, 2, 2, 2.0), std::make_tuple(2, 1, 1, 1.0)));

TEST(Chaotify, Errors) {
    const auto s = lattice_points(Box::cube(1, 30.0), 1.0);
    EXPECT_THROW(chaotify(s, 1, 1, 1.0, 0.5, 1.0), ParamOrder);
    EXPECT_THROW(chaotify(s, 0, 1, 1.0, 1.0, 1.0), InvalidArgument);
    EXPECT_THROW(chaotify(lattice_points(Box::cube(1, 2.0), 1.0), 1, 1, 1.0, 1.0, 1.0), WindowTooSmall);
}
