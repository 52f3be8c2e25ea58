#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <optional>
#include <string>
#include <vector>

#include "delone/hyperbolic.hpp"
#include "delone/numeric_policy.hpp"

/// The genus-2 surface glued from a regular-sided 12-gon with alternating
/// angles 2π/3, π/3, its side-pairing group Γ, and orbit enumeration.
namespace delone::surface {

using hyp::HPoint;
using hyp::Isometry;

/// Interior angles and side-pairing labels of the fundamental polygon.
///
/// Vertex k sits between side k−1 and side k; side j runs from vertex j to
/// vertex j+1 counterclockwise. `angles[k]` is the interior angle at vertex k.
struct PolygonSpec {
    std::vector<double> angles;
    std::string pairing;
    /// Sizes the vertex cycles must have, sorted; empty means "don't check".
    std::vector<std::size_t> expected_cycle_sizes;

    /// Twelve sides labelled ABCADCEDFEBF, angles 2π/3, π/3, ... starting at vertex 0.
    static PolygonSpec standard();

    std::size_t vertex_count() const { return angles.size(); }
    /// Throws InvalidArgument on inconsistent sizes, labels that do not occur
    /// exactly twice, or an angle sum incompatible with a hyperbolic polygon.
    void validate() const;
};

struct SolvedPolygon {
    std::vector<HPoint> vertices;  ///< counterclockwise, centre at i
    HPoint center{0.0, 1.0};
    double side_length = 0.0;
    double radius_sharp = 0.0;   ///< centre-to-vertex distance at the smaller angle
    double radius_obtuse = 0.0;  ///< centre-to-vertex distance at the larger angle
    double apothem = 0.0;
    /// Residuals of the numeric closure check.
    double max_side_error = 0.0;
    double max_angle_error = 0.0;
    double area = 0.0;  ///< sum of the central triangles' angular defects

    double circumradius() const { return std::max(radius_sharp, radius_obtuse); }
};

/// Places the vertices with dihedral symmetry by solving the centre–vertex–vertex
/// triangles with the angle law of cosines, then verifies closure numerically.
/// Throws NoSolution when the triangles are not hyperbolic or do not close up.
SolvedPolygon solve_polygon(const PolygonSpec& spec);

struct Generator {
    std::string label;  ///< "A".."F" for the pairing maps, lowercase for inverses
    Isometry matrix;
    int source_side = 0;  ///< the side this map carries onto its partner
    int target_side = 0;
};

struct VertexCycle {
    std::vector<int> vertices;
    std::vector<std::string> word;  ///< generator labels, applied left to right
    double angle_sum = 0.0;
    double identity_residual = 0.0;
};

class SurfaceGroup {
public:
    const PolygonSpec& spec() const { return spec_; }
    const SolvedPolygon& polygon() const { return polygon_; }
    /// Pairing maps and their inverses: A, a, B, b, ...
    const std::vector<Generator>& generators() const { return generators_; }
    const Generator& generator(const std::string& label) const;
    /// Index into generators() of the map carrying side j onto its partner.
    int side_generator(int side) const { return side_generator_.at(static_cast<std::size_t>(side)); }
    const std::vector<VertexCycle>& vertex_cycles() const { return cycles_; }
    HPoint base_point() const { return base_point_; }
    /// Injectivity radius μ of the surface at the image of the base point.
    double injectivity_radius_at_base() const { return mu_; }
    double circumradius() const { return polygon_.circumradius(); }

    std::vector<Isometry> generator_matrices() const;

    /// Same abstract group, conjugated by h: generators h g h⁻¹, base h·x,
    /// polygon h·P. Cycles and μ carry over unchanged.
    SurfaceGroup conjugated(const Isometry& h) const;

    /// Reassembles a group from serialized parts (no revalidation beyond shapes).
    static SurfaceGroup from_parts(PolygonSpec spec, SolvedPolygon polygon,
                                   std::vector<Generator> generators,
                                   std::vector<VertexCycle> cycles, HPoint base_point, double mu);

private:
    friend SurfaceGroup build_side_pairings(const SolvedPolygon&, const PolygonSpec&,
                                            const NumericPolicy&);
    PolygonSpec spec_;
    SolvedPolygon polygon_;
    std::vector<Generator> generators_;
    std::vector<int> side_generator_;
    std::vector<VertexCycle> cycles_;
    HPoint base_point_{0.0, 1.0};
    double mu_ = 0.0;
};

/// Builds the side-pairing maps (each carries a directed side onto the reversed
/// directed partner side), computes vertex cycles and μ.
/// Throws VertexCycleFailure if a cycle word is not the identity, a cycle's
/// angle sum is not 2π, or the cycle sizes differ from spec.expected_cycle_sizes.
SurfaceGroup build_side_pairings(const SolvedPolygon& poly, const PolygonSpec& spec,
                                 const NumericPolicy& policy = default_policy());

/// solve_polygon + build_side_pairings for PolygonSpec::standard().
SurfaceGroup standard_surface();

/// Element cap and optional wall-clock limit for enumerations.
struct Budget {
    std::size_t max_elements = default_policy().max_elements;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    /// Throws BudgetExceeded.
    void check(std::size_t elements) const;
};

struct OrbitPoint {
    HPoint point;
    Isometry element;
    int word_length = 0;
    double distance = 0.0;  ///< from the base point
};

/// Every γ with dist(γ·x, x) ≤ radius exactly once, sorted by (distance,
/// matrix). Throws InvalidArgument for radius <= 0 and BudgetExceeded.
std::vector<OrbitPoint> group_ball(const SurfaceGroup& group, double radius,
                                   const Budget& budget = {});

/// Orbit point near a geodesic segment, with its coordinates relative to the
/// geodesic computed in the geodesic's own frame (accurate far along the curve).
struct TubePoint {
    OrbitPoint orbit;
    hyp::GeodesicCoords coords;
    /// The element and its orbit point conjugated into the geodesic's frame.
    Isometry framed_element;
    HPoint framed_point;
};

/// Every orbit point within rho + margin of ell([t0, t1]), ordered by t.
/// Throws InvalidArgument unless t0 < t1 and rho > 0; BudgetExceeded.
std::vector<TubePoint> orbit_near_segment(const SurfaceGroup& group, const hyp::Geodesic& ell,
                                          double t0, double t1, double rho, double margin = 1e-6,
                                          const Budget& budget = {});

/// Finds orbit points (hence group elements, the action being free) by
/// position, up to a small hyperbolic distance.
class OrbitLookup {
public:
    explicit OrbitLookup(double tol = 1e-6) : tol_(tol) {}
    /// Stores p with the given id unless a point within tol is present; returns
    /// the id of the point now stored at that position.
    int insert(HPoint p, int id);
    std::optional<int> find(HPoint p) const;

private:
    static constexpr double kCell = 1e-3;
    std::uint64_t key(std::int64_t a, std::int64_t b) const;
    double tol_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<HPoint, int>>> cells_;
};

/// ½ · min nontrivial displacement of the base point over a ball of radius
/// `scan_radius` (default 4 · apothem).
double injectivity_radius(const SurfaceGroup& group, std::optional<double> scan_radius = {});

/// Enumeration slack beyond the target region: any tile meeting a geodesic
/// path has its centre within one circumradius of the path.
double enumeration_slack(const SurfaceGroup& group);

}  // namespace delone::surface
