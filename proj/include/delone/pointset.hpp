#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

/// Finite point sets in ℝⁿ (n ≤ 3) or on a flat torus, with the window on which
/// they are meaningful.
namespace delone {

/// Coordinates beyond the set's dimension are zero.
using Point = std::array<double, 3>;

constexpr int kMaxDim = 3;

/// Closed axis-aligned box [lo, hi] in the first `dim` coordinates.
struct Box {
    int dim = 1;
    Point lo{};
    Point hi{};

    /// Throws InvalidArgument unless 1 ≤ dim ≤ 3 and lo ≤ hi componentwise.
    static Box make(int dim, const Point& lo, const Point& hi);
    /// [−h, h]ⁿ.
    static Box cube(int dim, double h);
    static Box interval(double lo, double hi) { return make(1, {lo, 0, 0}, {hi, 0, 0}); }

    bool contains(const Point& p, double tol = 0.0) const;
    bool contains(const Box& other, double tol = 0.0) const;
    /// Grown by e on every side (negative e shrinks; may become empty).
    Box inflated(double e) const;
    Box translated(const Point& v) const;
    bool empty() const;
    double side(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]; }
    double min_side() const;
    /// Squared Euclidean distance from p to the box (0 inside).
    double distance2(const Point& p) const;

    friend bool operator==(const Box&, const Box&) = default;
};

/// A point set with the window it is claimed valid on. When `torus` is set the
/// window is a fundamental domain [−L/2, L/2)ⁿ of ℝⁿ/Lℤⁿ, points are canonical
/// representatives and distances wrap.
struct WindowedPointSet {
    int dim = 1;
    std::vector<Point> points;
    Box window;
    bool torus = false;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::vector<bool> flags;  ///< empty, or parallel to points

    std::size_t size() const { return points.size(); }
    /// Lexicographic order, flags permuted alongside.
    void sort_points();
    /// Points and window shifted by v.
    WindowedPointSet translated(const Point& v) const;
    /// Points inside the closed box, same window.
    std::vector<Point> points_in(const Box& b, double tol = 0.0) const;
    /// Throws InvalidArgument for bad dims, points outside the window or
    /// asserted parameters violating ε ≥ δ > 0.
    void validate() const;
};

double distance(const Point& a, const Point& b, int dim);
double distance2(const Point& a, const Point& b, int dim);
/// Distance on the torus with sides L (per axis).
double torus_distance(const Point& a, const Point& b, int dim, const Point& sides);
/// Canonical representative in [−L/2, L/2)ⁿ.
Point torus_canonical(const Point& p, int dim, const Point& sides);

/// spacing·ℤⁿ + offset restricted to the box.
WindowedPointSet lattice_points(const Box& window, double spacing, const Point& offset = {});

/// Torus of side L in every axis: window [−L/2, L/2)ⁿ with wrap.
Box torus_window(int dim, double side);

/// Uniform-grid spatial hash for neighbour queries, optionally on a torus.
class PointGrid {
public:
    PointGrid(int dim, double cell, std::optional<Point> torus_sides = std::nullopt);
    void insert(const Point& p);
    /// Squared distance to the nearest stored point within `radius`, or
    /// nullopt when none is that close.
    std::optional<double> nearest2_within(const Point& p, double radius) const;
    /// Stored points within `radius` of p (as stored, not unwrapped).
    std::vector<Point> points_within(const Point& p, double radius) const;
    bool any_within(const Point& p, double radius) const {
        return nearest2_within(p, radius).has_value();
    }
    std::size_t size() const { return count_; }

private:
    using Key = std::array<long long, 3>;
    Key key_of(const Point& p) const;
    template <class F>
    void visit_near(const Point& p, double radius, F&& f) const;
    double dist2(const Point& a, const Point& b) const;
    int dim_;
    Point cell_{};
    std::optional<Point> torus_;
    std::array<long long, 3> wrap_cells_{};
    std::size_t count_ = 0;
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    std::unordered_map<Key, std::vector<Point>, KeyHash> cells_;
};

}  // namespace delone
