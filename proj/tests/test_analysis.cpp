#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "delone/analysis.hpp"
#include "delone/errors.hpp"

using namespace delone;
using namespace delone::analysis;

namespace {

WindowedPointSet line_set(std::vector<double> xs, double lo, double hi) {
    WindowedPointSet s;
    s.dim = 1;
    s.window = Box::interval(lo, hi);
    std::sort(xs.begin(), xs.end());
    for (double x : xs) s.points.push_back({x, 0.0, 0.0});
    return s;
}

WindowedPointSet jittered_lattice(int dim, double half, double jitter, std::mt19937_64& rng) {
    WindowedPointSet s = lattice_points(Box::cube(dim, half), 1.0);
    std::uniform_real_distribution<double> u(-jitter, jitter);
    for (Point& p : s.points) {
        for (int k = 0; k < dim; ++k) p[static_cast<std::size_t>(k)] += u(rng);
    }
    return s;
}

WindowedPointSet perturbed(const WindowedPointSet& s, double amount, std::mt19937_64& rng) {
    WindowedPointSet out = s;
    std::uniform_real_distribution<double> u(-amount, amount);
    for (Point& p : out.points) {
        for (int k = 0; k < s.dim; ++k) p[static_cast<std::size_t>(k)] += u(rng);
    }
    return out;
}

double brute_min_gap(const WindowedPointSet& s) {
    double best = 1e300;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) best = std::min(best, distance(s.points[i], s.points[j], s.dim));
    }
    return best;
}

}  // namespace

TEST(Delone, IntegerLattice) {
    std::vector<double> xs;
    for (int i = -10; i <= 10; ++i) xs.push_back(i);
    const auto rep = check_delone(line_set(xs, -10, 10), 0.5, 1.0);
    EXPECT_DOUBLE_EQ(rep.min_gap, 1.0);
    EXPECT_DOUBLE_EQ(rep.max_gap, 1.0);
    EXPECT_NEAR(rep.covering_radius, 0.5, 1e-12);
    EXPECT_TRUE(rep.separated_ok);
    EXPECT_TRUE(rep.dense_ok);
    const auto strict = check_delone(line_set(xs, -10, 10), 0.4, 1.5);
    EXPECT_FALSE(strict.separated_ok);
    EXPECT_FALSE(strict.dense_ok);
}

TEST(Delone, WindowTooSmall) {
    EXPECT_THROW(check_delone(line_set({0.0}, -1, 1), 1.0, 0.5), WindowTooSmall);
}

TEST(Delone, PlanarMinGapMatchesBruteForce) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = jittered_lattice(2, 6.0, 0.3, rng);
        const auto rep = check_delone(s, 1.0, 0.3);
        EXPECT_NEAR(rep.min_gap, brute_min_gap(s), 1e-12);
        // The probe estimate never undershoots a brute-force grid maximum by more than the probe spacing.
        double cover = 0.0;
        for (double x = -5.0; x <= 5.0; x += 0.05) {
            for (double y = -5.0; y <= 5.0; y += 0.05) {
                double d = 1e300;
                for (const Point& p : s.points) d = std::min(d, std::hypot(p[0] - x, p[1] - y));
                cover = std::max(cover, d);
            }
        }
        EXPECT_GT(rep.covering_radius, cover - 0.1);
        EXPECT_LT(rep.covering_radius, cover + 0.1);
    }
}

TEST(Entourage, SmallPerturbationIsClose) {
    std::mt19937_64 rng(22);
    const auto s = jittered_lattice(1, 20.0, 0.2, rng);
    const auto t = perturbed(s, 0.2, rng);
    EXPECT_TRUE(entourage_member(s, t, Entourage::from_r(1, 3.0)));
    EXPECT_FALSE(entourage_member(s, s.translated({0.5, 0, 0}), Entourage::from_r(1, 3.0)));
    EXPECT_THROW(Entourage::from_r(1, 0.0), InvalidArgument);
}

TEST(Entourage, SymmetricAndAntitone) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> amount(0.0, 0.6);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = trial % 2 + 1;
        const auto s = jittered_lattice(dim, 12.0, 0.2, rng);
        const auto t = perturbed(s, amount(rng), rng);
        for (double r : {1.0, 2.0, 4.0}) {
            const bool st = entourage_member(s, t, Entourage::from_r(dim, r));
            EXPECT_EQ(st, entourage_member(t, s, Entourage::from_r(dim, r)));
            if (st) {
                for (double smaller : {0.5 * r, 0.9 * r}) {
                    EXPECT_TRUE(entourage_member(s, t, Entourage::from_r(dim, smaller)));
                }
            }
        }
    }
}

TEST(Entourage, RubberProximityOfIdenticalSets) {
    std::mt19937_64 rng(24);
    const auto s = jittered_lattice(1, 20.0, 0.2, rng);
    EXPECT_DOUBLE_EQ(rubber_proximity(s, s, 8.0), 8.0);
    const auto t = s.translated({0.25, 0, 0});
    // Every point moves by 0.25, so N_r holds exactly while 1/r ≥ 0.25.
    EXPECT_NEAR(rubber_proximity(s, t, 8.0), 4.0, 1e-5);
}

TEST(Periods, LatticeHasIntegerPeriods) {
    std::vector<double> xs;
    for (int i = -40; i <= 40; ++i) xs.push_back(i);
    const auto periods = find_periods(line_set(xs, -40, 40), Entourage::from_r(1, 10.0), 0.5, 5.0);
    EXPECT_EQ(periods, (std::vector<double>{1, 2, 3, 4, 5}));
}

TEST(Periods, GenericSetHasNone) {
    std::mt19937_64 rng(25);
    const auto s = jittered_lattice(1, 40.0, 0.3, rng);
    EXPECT_TRUE(find_periods(s, Entourage::from_r(1, 10.0), 0.01, 10.0).empty());
}

TEST(Composition, CorrectedRuleHoldsOnRandomTriples) {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = trial % 2 + 1;
        const double a = 1.0 + 2.0 * u(rng), b = 0.3 * u(rng), c = 1.0 + 2.0 * u(rng), d = 0.3 * u(rng);
        const auto s1 = jittered_lattice(dim, 10.0, 0.2, rng);
        const auto s2 = perturbed(s1, b * u(rng), rng);
        const auto s3 = perturbed(s2, d * u(rng), rng);
        EXPECT_TRUE(composition_check(Box::cube(dim, a), Box::cube(dim, b), Box::cube(dim, c), Box::cube(dim, d),
                                      s1, s2, s3));
    }
}

TEST(Composition, LiteralRuleHasCounterexample) {
    std::vector<double> z, z4;
    for (int i = -10; i <= 10; ++i) {
        z.push_back(i);
        z4.push_back(i + 0.4);
    }
    const auto s1 = line_set(z, -10, 10);
    const auto s3 = line_set(z4, -10, 10);
    const Box a = Box::cube(1, 2.0), b = Box::cube(1, 0.1), c = Box::cube(1, 0.1), d = Box::cube(1, 0.45);
    EXPECT_FALSE(composition_check_literal(a, b, c, d, s1, s1, s3));
    EXPECT_TRUE(composition_check(a, b, c, d, s1, s1, s3));
}

TEST(Minkowski, SumOfBoxes) {
    const Box m = minkowski(Box::cube(2, 1.0), Box::cube(2, 0.5));
    EXPECT_EQ(m, Box::cube(2, 1.5));
}
