#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "delone/cut_project.hpp"
#include "delone/pointset.hpp"

/// Window-aware Delone checks and the local-rubber entourages N_{U,U′}.
namespace delone::analysis {

/// Region around the origin: a union of closed boxes or a closed ball.
struct Shape {
    enum class Kind { boxes, ball };
    Kind kind = Kind::boxes;
    int dim = 1;
    std::vector<Box> boxes;
    double radius = 0.0;

    static Shape box(const Box& b);
    static Shape cube(int dim, double h) { return box(Box::cube(dim, h)); }
    static Shape union_of(std::vector<Box> boxes);
    static Shape ball(int dim, double r);

    /// Membership with every box or the ball inflated by tol.
    bool contains(const Point& p, double tol) const;
    Box bounding_box() const;
};

/// N_{U,U′}: (S, S′) are close when S ∩ U ⊂ S′ + U′ and S′ ∩ U ⊂ S + U′.
struct Entourage {
    Shape U;
    Shape U_prime;

    /// N_r: U = [−r, r]ⁿ, U′ = [−1/r, 1/r]ⁿ. Throws InvalidArgument unless r > 0.
    static Entourage from_r(int dim, double r);
};

/// Closed-set tolerance used for all entourage inclusions.
constexpr double kEntourageTol = 1e-9;

struct DeloneReport {
    double min_gap = std::numeric_limits<double>::infinity();
    /// dim 1: largest gap between consecutive points meeting the shrunk window;
    /// higher dims and tori: twice the covering radius estimate.
    double max_gap = 0.0;
    double covering_radius = 0.0;
    bool separated_ok = true;
    bool dense_ok = true;
    double margin = 0.0;
    std::size_t boundary_flag_count = 0;
    std::size_t point_count = 0;
    std::size_t probe_count = 0;  ///< 0 when the covering radius is exact
};

WindowedPointSet from_projected(const cp::ProjectedSet& ps);

/// separated_ok ⇔ min pairwise distance ≥ δ (within 1e-9). dense_ok ⇔ every
/// point of the ε-shrunk window is within ε of the set: exact in dim 1, grid
/// probes of spacing ε/10 otherwise. Tori use the wrap metric and no shrink.
/// Throws WindowTooSmall if a window side is ≤ 2ε, InvalidArgument for bad
/// parameters.
DeloneReport check_delone(const WindowedPointSet& s, double epsilon, double delta);
DeloneReport check_delone(const cp::ProjectedSet& ps, double epsilon, double delta);

/// Both inclusions of N_{U,U′}, with closed inflation kEntourageTol.
/// Throws WindowTooSmall if a window misses part of U, or if a point of S ∩ U
/// has no partner and its search region p − U′ leaves the other window.
bool entourage_member(const WindowedPointSet& s, const WindowedPointSet& s2, const Entourage& e);

/// sup{r ≤ r_max : (S, S′) ∈ N_r} by bisection to 1e-6.
double rubber_proximity(const WindowedPointSet& s, const WindowedPointSet& s2, double r_max);

/// Shifts p ∈ [p_min, p_max] (dim 1) among the differences y − x, x ∈ S ∩ U,
/// coalesced at 1e-6, for which (S, S − p) ∈ E. Sorted ascending.
std::vector<double> find_periods(const WindowedPointSet& s, const Entourage& e, double p_min,
                                 double p_max);

/// Whether ((S1,S2) ∈ N_{A+B,B} ∧ (S2,S3) ∈ N_{C+D,D}) ⇒ (S1,S3) ∈ N_{U, B+D}
/// with U the largest origin-centred box inside A ∩ C for which the triangle
/// argument goes through: half-widths min(a, c, c + d − b, a + b − d).
/// A..D must be origin-symmetric boxes.
bool composition_check(const Box& A, const Box& B, const Box& C, const Box& D,
                       const WindowedPointSet& s1, const WindowedPointSet& s2,
                       const WindowedPointSet& s3);

/// The same implication with the conclusion N_{A∩C, 2(B∪C)} taken literally.
/// This version admits counterexamples; it exists so tests can exhibit one.
bool composition_check_literal(const Box& A, const Box& B, const Box& C, const Box& D,
                               const WindowedPointSet& s1, const WindowedPointSet& s2,
                               const WindowedPointSet& s3);

/// Minkowski sum of two boxes.
Box minkowski(const Box& a, const Box& b);

}  // namespace delone::analysis
