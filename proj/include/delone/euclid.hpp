#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delone/pointset.hpp"

/// Bounded-window constructions on Euclidean Delone sets: greedy maximal
/// packings, extension and gluing, the open sets V_q and W_{m,m′}, and the
/// chaotification pipeline.
namespace delone::euclid {

/// Union of closed axis-aligned boxes.
struct Region {
    int dim = 1;
    std::vector<Box> boxes;

    static Region of(const Box& b) { return {b.dim, {b}}; }
    bool contains(const Point& p, double tol = 0.0) const;
    Box bounding_box() const;
    /// Each box shrunk by e (empty boxes dropped): a subset of
    /// {x : D(x, e) ⊂ region}.
    Region shrunk(double e) const;
};

/// Where a packing lives: a box in ℝⁿ or a torus [−L/2, L/2)ⁿ.
struct Ambient {
    Box box;
    bool torus = false;

    static Ambient euclidean(const Box& b) { return {b, false}; }
    static Ambient torus_of_side(int dim, double side) { return {torus_window(dim, side), true}; }
};

/// Adds points to `fixed` so that the result is δ-separated and maximal among
/// points of ∪include \ ∪exclude: first a δ/2 grid pass in lexicographic order,
/// then (dims 1 and 2) an exact completion over the vertices of the feasible
/// region. In dim 3 the completion is a δ/8 probe pass, so maximality holds
/// only up to that resolution. Returns the added points only.
std::vector<Point> greedy_fill(const std::vector<Point>& fixed, double delta, int dim,
                               const std::vector<Box>& include, const std::vector<Box>& exclude,
                               std::optional<Point> torus_sides = std::nullopt);

/// S plus a greedy maximal δ-separated fill of `region`.
/// Throws NotSeparatedInput if S is not δ-separated.
WindowedPointSet greedy_separated_complete(const WindowedPointSet& s, double delta,
                                           const Region& region);

/// Output agrees with S on A_ε (the ε-shrunk boxes), is (ε,δ)-Delone on A, and
/// has window bounding_box(A). Throws ParamOrder if ε < δ, WindowTooSmall if
/// S's window does not contain A inflated by ε, NotSeparatedInput.
WindowedPointSet inner_extend(const WindowedPointSet& s, const Region& a, double epsilon,
                              double delta);

/// Output ∩ A = N, (ε,δ)-Delone on the ambient (wrap metric on a torus).
/// Throws ParamOrder if ε < δ, NotDeloneOnA if N is not (ε,δ)-Delone on A or
/// has points outside A.
WindowedPointSet glue_extend(const WindowedPointSet& n, const Region& a, const Ambient& ambient,
                             double epsilon, double delta);

struct VqParams {
    Point q{};
    double alpha = 0.0;
};

struct VqResult {
    bool member = false;
    std::optional<Point> witness;
};

/// Whether some x ∈ S has the closed disk D(x − q, α) free of S. Candidates
/// whose disk lies inside the window are tried by increasing |x|, then
/// lexicographically. Throws WindowTooSmall when no candidate qualifies.
VqResult vq_member(const WindowedPointSet& s, const VqParams& p);

struct VqConstruction {
    WindowedPointSet set;
    Point witness{};
};

/// A (δ,δ)-Delone set on `window` that lies in V_q: a packing through the
/// origin when |q| + α < δ, otherwise the completion of {0, q + 2α·q/|q|}.
/// Throws ParamOrder unless 0 < α < δ/4 and ε ≥ δ, InvalidArgument if
/// |q| ≤ α (then V_q is empty) or the window does not contain the seed points.
VqConstruction vq_construct(const VqParams& p, double epsilon, double delta, const Box& window);

struct WWitness {
    int m = 1;
    int m_prime = 1;
    Point x{};
    double grid_period = 0.0;
};

struct WResult {
    bool member = false;
    std::optional<WWitness> witness;
};

/// Scans x over search_box on a grid of spacing 1/(4m′) (lexicographic) for
/// (S, S − x) ∈ N_m and (S − x, S − x − L·a) ∈ N_{m′} for all |aᵢ| ≤ m′.
/// Throws WindowTooSmall unless the window covers search_box inflated by
/// m′·L + m.
WResult w_member(const WindowedPointSet& s, int m, int m_prime, double grid_period,
                 const Box& search_box);

/// Twice (m + δ + ε): the side of the torus used by chaotify.
double default_grid_period(int m, double epsilon, double delta);

struct ChaotifyResult {
    WindowedPointSet s_hat;
    WWitness witness;
    WindowedPointSet inner;        ///< stage 1: S extended onto [−m−ε, m+ε]ⁿ
    WindowedPointSet torus_set;    ///< stage 2: Delone set on the torus
    WindowedPointSet block;        ///< stage 3: periodic block around the witness
    WindowedPointSet core;         ///< stage 4 input: S extended onto [−l′−ε, l′+ε]ⁿ
    double core_half_width = 0.0;  ///< l′ = max(l, m)
};

/// Builds Ŝ agreeing with S on [−l, l]ⁿ, (ε,δ)-Delone, in W_{m,m′} with the
/// returned witness, and N_l-close to S. Throws ParamOrder if ε < δ,
/// InvalidArgument for m, m′ < 1, l < 0 or a grid period too small for the
/// torus, WindowTooSmall if S's window does not contain [−(m+ε+1), m+ε+1]ⁿ.
ChaotifyResult chaotify(const WindowedPointSet& s, int m, int m_prime, double l, double epsilon,
                        double delta, std::optional<double> grid_period = std::nullopt);

}  // namespace delone::euclid
