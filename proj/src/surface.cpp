#include "delone/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <unordered_map>

#include "delone/errors.hpp"

namespace delone::surface {

namespace {

constexpr double kPi = std::numbers::pi;

using hyp::Geodesic;
using hyp::GeodesicCoords;

// ---------------------------------------------------------------- orbit index

struct Node {
    Isometry element;
    HPoint point;
    int depth = 0;
};

// Breadth-first walk over tiles: γ is expanded to γ·g for every generator g,
// keeping only elements whose orbit point satisfies `keep`. Elements are
// identified by their orbit point, which is valid because Γ acts freely.
template <class Keep>
std::vector<Node> explore(const std::vector<Isometry>& gens, HPoint base, Keep keep,
                          const Budget& budget, double dedup_tol) {
    std::vector<Node> nodes;
    OrbitLookup index(dedup_tol);
    index.insert(base, 0);
    nodes.push_back({Isometry::identity(), base, 0});
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if ((head & 1023U) == 0) budget.check(nodes.size());
        const Node current = nodes[head];
        for (const Isometry& g : gens) {
            const Isometry e = current.element * g;
            const HPoint p = e.apply(base);
            if (!keep(p)) continue;
            const int id = static_cast<int>(nodes.size());
            if (index.insert(p, id) != id) continue;
            nodes.push_back({e, p, current.depth + 1});
            if (nodes.size() > budget.max_elements) budget.check(nodes.size());
        }
    }
    return nodes;
}

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

double interior_angle(const std::vector<HPoint>& v, std::size_t k) {
    const std::size_t n = v.size();
    const double to_next = Geodesic::through(v[k], v[(k + 1) % n]).tangent_at(0.0).direction;
    const double to_prev = Geodesic::through(v[k], v[(k + n - 1) % n]).tangent_at(0.0).direction;
    return hyp::normalize_angle(to_prev - to_next);
}

}  // namespace

// ---------------------------------------------------------------- polygon

PolygonSpec PolygonSpec::standard() {
    PolygonSpec spec;
    for (int k = 0; k < 12; ++k) spec.angles.push_back(k % 2 == 0 ? 2.0 * kPi / 3.0 : kPi / 3.0);
    spec.pairing = "ABCADCEDFEBF";
    spec.expected_cycle_sizes = {3, 3, 6};
    return spec;
}

void PolygonSpec::validate() const {
    const std::size_t n = angles.size();
    if (n < 3) throw InvalidArgument("polygon needs at least 3 vertices");
    if (pairing.size() != n) throw InvalidArgument("pairing length must equal vertex count");
    std::map<char, int> counts;
    for (char ch : pairing) {
        if (!std::isupper(static_cast<unsigned char>(ch))) {
            throw InvalidArgument("pairing labels must be uppercase letters");
        }
        ++counts[ch];
    }
    for (const auto& [label, count] : counts) {
        if (count != 2) throw InvalidArgument(std::string("label ") + label + " must occur exactly twice");
    }
    double sum = 0.0;
    for (double a : angles) {
        if (!(a > 0.0 && a < kPi)) throw InvalidArgument("interior angles must lie in (0, π)");
        sum += a;
    }
    if (!(sum < (static_cast<double>(n) - 2.0) * kPi)) {
        throw InvalidArgument("angle sum too large for a hyperbolic polygon");
    }
}

SolvedPolygon solve_polygon(const PolygonSpec& spec) {
    spec.validate();
    const std::size_t n = spec.vertex_count();
    const double central = 2.0 * kPi / static_cast<double>(n);

    // Triangle k has the centre, vertex k and vertex k+1, with angles central,
    // angles[k]/2 and angles[k+1]/2.
    std::vector<double> radius_from_left(n);
    std::vector<double> radius_from_right(n);
    std::vector<double> side(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double al = 0.5 * spec.angles[k];
        const double be = 0.5 * spec.angles[(k + 1) % n];
        if (!(central + al + be < kPi)) throw NoSolution("central triangle is not hyperbolic");
        const double sc = std::sin(central);
        const double cc = std::cos(central);
        radius_from_left[k] =
            std::acosh((std::cos(al) * cc + std::cos(be)) / (std::sin(al) * sc));
        radius_from_right[(k + 1) % n] =
            std::acosh((std::cos(be) * cc + std::cos(al)) / (std::sin(be) * sc));
        side[k] = std::acosh((std::cos(al) * std::cos(be) + cc) / (std::sin(al) * std::sin(be)));
    }

    SolvedPolygon poly;
    std::vector<double> radius(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(radius_from_left[k] - radius_from_right[k]) > 1e-9) {
            throw NoSolution("angle pattern admits no polygon with dihedral symmetry");
        }
        radius[k] = radius_from_left[k];
        poly.vertices.push_back(
            hyp::polar_from_center(radius[k], central * static_cast<double>(k)));
    }

    const auto [min_a, max_a] = std::minmax_element(spec.angles.begin(), spec.angles.end());
    poly.radius_sharp = radius[static_cast<std::size_t>(min_a - spec.angles.begin())];
    poly.radius_obtuse = radius[static_cast<std::size_t>(max_a - spec.angles.begin())];
    poly.side_length = side[0];

    // Closure check on the placed vertices.
    poly.apothem = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const HPoint p = poly.vertices[k];
        const HPoint q = poly.vertices[(k + 1) % n];
        poly.max_side_error = std::max(poly.max_side_error, std::abs(hyp::dist(p, q) - side[k]));
        poly.max_side_error = std::max(poly.max_side_error, std::abs(side[k] - side[0]));
        const double measured = interior_angle(poly.vertices, k);
        poly.max_angle_error = std::max(poly.max_angle_error, std::abs(measured - spec.angles[k]));
        const double s = hyp::project_to_geodesic(Geodesic::through(p, q), poly.center).s;
        poly.apothem = std::min(poly.apothem, std::abs(s));
        poly.area += kPi - central - 0.5 * measured - 0.5 * interior_angle(poly.vertices, (k + 1) % n);
    }
    if (poly.max_side_error > 1e-9 || poly.max_angle_error > 1e-9) {
        throw NoSolution("polygon does not close up numerically");
    }
    return poly;
}

// ---------------------------------------------------------------- group

const Generator& SurfaceGroup::generator(const std::string& label) const {
    for (const Generator& g : generators_) {
        if (g.label == label) return g;
    }
    throw InvalidArgument("unknown generator label " + label);
}

std::vector<Isometry> SurfaceGroup::generator_matrices() const {
    std::vector<Isometry> out;
    out.reserve(generators_.size());
    for (const Generator& g : generators_) out.push_back(g.matrix);
    return out;
}

SurfaceGroup SurfaceGroup::conjugated(const Isometry& h) const {
    SurfaceGroup out = *this;
    const Isometry hinv = h.inverse();
    for (Generator& g : out.generators_) g.matrix = h * g.matrix * hinv;
    for (HPoint& v : out.polygon_.vertices) v = h.apply(v);
    out.polygon_.center = h.apply(polygon_.center);
    out.base_point_ = h.apply(base_point_);
    return out;
}

SurfaceGroup SurfaceGroup::from_parts(PolygonSpec spec, SolvedPolygon polygon,
                                      std::vector<Generator> generators,
                                      std::vector<VertexCycle> cycles, HPoint base_point,
                                      double mu) {
    const std::size_t n = spec.vertex_count();
    if (polygon.vertices.size() != n || generators.size() != n) {
        throw SchemaViolation("surface parts have inconsistent sizes");
    }
    SurfaceGroup out;
    out.side_generator_.assign(n, -1);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const int side = generators[i].source_side;
        if (side < 0 || static_cast<std::size_t>(side) >= n) {
            throw SchemaViolation("generator side out of range");
        }
        out.side_generator_[static_cast<std::size_t>(side)] = static_cast<int>(i);
    }
    if (std::count(out.side_generator_.begin(), out.side_generator_.end(), -1) != 0) {
        throw SchemaViolation("some side has no generator");
    }
    out.spec_ = std::move(spec);
    out.polygon_ = std::move(polygon);
    out.generators_ = std::move(generators);
    out.cycles_ = std::move(cycles);
    out.base_point_ = base_point;
    out.mu_ = mu;
    return out;
}

SurfaceGroup build_side_pairings(const SolvedPolygon& poly, const PolygonSpec& spec,
                                 const NumericPolicy& policy) {
    spec.validate();
    const std::size_t n = spec.vertex_count();
    if (poly.vertices.size() != n) throw InvalidArgument("polygon and spec disagree on size");
    const auto& v = poly.vertices;

    SurfaceGroup group;
    group.spec_ = spec;
    group.polygon_ = poly;
    group.base_point_ = poly.center;
    group.side_generator_.assign(n, -1);

    std::vector<int> partner(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (spec.pairing[j] == spec.pairing[k]) {
                partner[j] = static_cast<int>(k);
                partner[k] = static_cast<int>(j);
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        const auto jp = static_cast<std::size_t>(partner[j]);
        if (jp < j) continue;
        // Directed side j, vertex j → j+1, onto the partner traversed backwards.
        const Isometry source = Geodesic::through(v[j], v[(j + 1) % n]).frame();
        const Isometry target = Geodesic::through(v[(jp + 1) % n], v[jp]).frame();
        const Isometry g = target.inverse() * source;
        const std::string label(1, spec.pairing[j]);
        group.side_generator_[j] = static_cast<int>(group.generators_.size());
        group.generators_.push_back({label, g, static_cast<int>(j), static_cast<int>(jp)});
        group.side_generator_[jp] = static_cast<int>(group.generators_.size());
        group.generators_.push_back({lower(label), g.inverse(), static_cast<int>(jp), static_cast<int>(j)});
    }

    // Vertex cycles: follow a vertex through successive side pairings until it
    // returns to the starting (vertex, side) state.
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> sizes;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        VertexCycle cycle;
        std::size_t vert = start;
        std::size_t side = start;
        Isometry word;
        do {
            seen[vert] = true;
            cycle.vertices.push_back(static_cast<int>(vert));
            cycle.angle_sum += spec.angles[vert];
            const Generator& g = group.generators_[static_cast<std::size_t>(group.side_generator_[side])];
            cycle.word.push_back(g.label);
            word = g.matrix * word;
            const auto sp = static_cast<std::size_t>(g.target_side);
            const std::size_t next_vert = (vert == side) ? (sp + 1) % n : sp;
            const std::size_t next_side = (next_vert == sp) ? (sp + n - 1) % n : next_vert;
            vert = next_vert;
            side = next_side;
            if (cycle.vertices.size() > n) throw VertexCycleFailure("vertex cycle does not close");
        } while (!(vert == start && side == start));
        cycle.identity_residual = word.distance_to(Isometry::identity());
        if (cycle.identity_residual > policy.cycle_identity_tol) {
            throw VertexCycleFailure("cycle word at vertex " + std::to_string(start) +
                                     " is not the identity (residual " +
                                     std::to_string(cycle.identity_residual) + ")");
        }
        if (std::abs(cycle.angle_sum - 2.0 * kPi) > policy.cycle_identity_tol) {
            throw VertexCycleFailure("cycle angle sum at vertex " + std::to_string(start) +
                                     " is not 2π");
        }
        sizes.push_back(cycle.vertices.size());
        group.cycles_.push_back(std::move(cycle));
    }
    std::sort(sizes.begin(), sizes.end());
    if (!spec.expected_cycle_sizes.empty() && sizes != spec.expected_cycle_sizes) {
        throw VertexCycleFailure("vertex cycle sizes differ from the expected pattern");
    }

    group.mu_ = injectivity_radius(group);
    return group;
}

SurfaceGroup standard_surface() {
    const PolygonSpec spec = PolygonSpec::standard();
    return build_side_pairings(solve_polygon(spec), spec);
}

// ---------------------------------------------------------------- enumeration

// Keyed on Fermi coordinates about the imaginary axis. Those stay moderate even
// for points far up the axis, where raw coordinates overflow any sensible grid.
// Distinct orbit points are 2μ apart, far more than a cell.
std::uint64_t OrbitLookup::key(std::int64_t a, std::int64_t b) const {
    return static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(b);
}

int OrbitLookup::insert(HPoint p, int id) {
    if (auto found = find(p)) return *found;
    const GeodesicCoords c = hyp::coords_in_frame(p);
    cells_[key(static_cast<std::int64_t>(std::floor(c.t / kCell)),
               static_cast<std::int64_t>(std::floor(c.s / kCell)))]
        .push_back({p, id});
    return id;
}

std::optional<int> OrbitLookup::find(HPoint p) const {
    const GeodesicCoords c = hyp::coords_in_frame(p);
    const auto ct = static_cast<std::int64_t>(std::floor(c.t / kCell));
    const auto cs = static_cast<std::int64_t>(std::floor(c.s / kCell));
    for (std::int64_t dt = -1; dt <= 1; ++dt) {
        for (std::int64_t ds = -1; ds <= 1; ++ds) {
            auto it = cells_.find(key(ct + dt, cs + ds));
            if (it == cells_.end()) continue;
            for (const auto& [q, id] : it->second) {
                if (hyp::dist(p, q) <= tol_) return id;
            }
        }
    }
    return std::nullopt;
}

void Budget::check(std::size_t elements) const {
    if (elements > max_elements) {
        throw BudgetExceeded("enumeration exceeded " + std::to_string(max_elements) + " elements");
    }
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
        throw BudgetExceeded("enumeration exceeded its time limit");
    }
}

double enumeration_slack(const SurfaceGroup& group) { return group.circumradius() + 0.05; }

std::vector<OrbitPoint> group_ball(const SurfaceGroup& group, double radius, const Budget& budget) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("radius must be positive");
    const HPoint base = group.base_point();
    const double reach = radius + enumeration_slack(group);
    const auto nodes = explore(
        group.generator_matrices(), base, [&](HPoint p) { return hyp::dist(p, base) <= reach; },
        budget, default_policy().orbit_dedup_tol);
    std::vector<OrbitPoint> out;
    for (const Node& node : nodes) {
        const double d = hyp::dist(node.point, base);
        if (d <= radius) out.push_back({node.point, node.element, node.depth, d});
    }
    std::sort(out.begin(), out.end(), [](const OrbitPoint& a, const OrbitPoint& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.element < b.element;
    });
    return out;
}

std::vector<TubePoint> orbit_near_segment(const SurfaceGroup& group, const Geodesic& ell,
                                          double t0, double t1, double rho, double margin,
                                          const Budget& budget) {
    if (!(t0 < t1) || !std::isfinite(t0) || !std::isfinite(t1)) {
        throw InvalidArgument("segment needs finite t0 < t1");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("rho must be positive");

    // Work in the frame of ell so that points far along the curve stay well
    // conditioned; there the curve is the imaginary axis.
    const Isometry frame = ell.frame();
    const Isometry frame_inv = frame.inverse();
    std::vector<Isometry> gens;
    for (const Isometry& g : group.generator_matrices()) gens.push_back(frame * g * frame_inv);
    const HPoint base = frame.apply(group.base_point());

    // The walk must also cover the tiles joining the base to the segment.
    const GeodesicCoords base_coords = hyp::coords_in_frame(base);
    const double t_join = std::clamp(base_coords.t, t0, t1);
    const HPoint join{0.0, std::exp(t_join)};
    const double join_length = hyp::dist(base, join);
    const bool has_link = join_length > 1e-12;
    const Geodesic link = has_link ? Geodesic::through(base, join) : Geodesic();

    const double accept = rho + margin;
    const double reach = accept + enumeration_slack(group);
    auto keep = [&](HPoint p) {
        if (hyp::dist_to_segment(hyp::coords_in_frame(p), t0, t1) <= reach) return true;
        return has_link && hyp::dist_to_segment(link, 0.0, join_length, p) <= reach;
    };
    const auto nodes = explore(gens, base, keep, budget, default_policy().orbit_dedup_tol);

    std::vector<TubePoint> out;
    for (const Node& node : nodes) {
        const GeodesicCoords c = hyp::coords_in_frame(node.point);
        if (hyp::dist_to_segment(c, t0, t1) > accept) continue;
        OrbitPoint orbit{frame_inv.apply(node.point), frame_inv * node.element * frame, node.depth,
                         hyp::dist(node.point, base)};
        out.push_back({orbit, c, node.element, node.point});
    }
    std::sort(out.begin(), out.end(), [](const TubePoint& a, const TubePoint& b) {
        if (a.coords.t != b.coords.t) return a.coords.t < b.coords.t;
        return a.coords.s < b.coords.s;
    });
    return out;
}

double injectivity_radius(const SurfaceGroup& group, std::optional<double> scan_radius) {
    const double r = scan_radius.value_or(4.0 * group.polygon().apothem);
    double best = std::numeric_limits<double>::infinity();
    for (const OrbitPoint& p : group_ball(group, r)) {
        if (p.word_length > 0) best = std::min(best, p.distance);
    }
    if (!std::isfinite(best)) throw NoSolution("no nontrivial orbit point within the scan radius");
    return 0.5 * best;
}

}  // namespace delone::surface
