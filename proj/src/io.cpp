#include "delone/io.hpp"

#include <fstream>
#include <sstream>

#include "delone/errors.hpp"

namespace delone::io {

namespace {

template <class T>
T get(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaViolation(std::string("missing field ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw SchemaViolation(std::string("bad field ") + key + ": " + e.what());
    }
}

void expect_kind(const json& j, const char* kind) {
    if (get<std::string>(j, "kind") != kind) throw SchemaViolation(std::string("expected a ") + kind + " document");
}

json point_json(const Point& p, int dim) {
    json a = json::array();
    for (int k = 0; k < dim; ++k) a.push_back(p[static_cast<std::size_t>(k)]);
    return a;
}

Point point_from(const json& a, int dim) {
    if (!a.is_array() || a.size() != static_cast<std::size_t>(dim)) throw SchemaViolation("point has wrong arity");
    Point p{};
    for (int k = 0; k < dim; ++k) {
        if (!a[static_cast<std::size_t>(k)].is_number()) throw SchemaViolation("point coordinate is not a number");
        p[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)].get<double>();
    }
    return p;
}

hyp::HPoint hpoint_from(const json& a) {
    if (!a.is_array() || a.size() != 2) throw SchemaViolation("hyperbolic point must be [x, y]");
    const double x = a[0].get<double>();
    const double y = a[1].get<double>();
    if (!(y > 0.0)) throw SchemaViolation("hyperbolic point needs y > 0");
    return {x, y};
}

hyp::Isometry isometry_from(const json& a) {
    if (!a.is_array() || a.size() != 4) throw SchemaViolation("isometry must be 4 reals");
    try {
        return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), a[3].get<double>()};
    } catch (const InvalidArgument& e) {
        throw SchemaViolation(e.what());
    } catch (const json::exception& e) {
        throw SchemaViolation(e.what());
    }
}

json boundary_json(hyp::BoundaryPoint b) {
    if (b.infinite) return "inf";
    return b.value;
}

}  // namespace

json to_json(hyp::HPoint p) { return json::array({p.x, p.y}); }

json to_json(const hyp::Isometry& g) { return json::array({g.a(), g.b(), g.c(), g.d()}); }

json to_json(const hyp::Geodesic& ell) {
    return {{"frame", to_json(ell.frame())},
            {"alpha", boundary_json(ell.alpha())},
            {"omega", boundary_json(ell.omega())},
            {"anchor", to_json(ell.anchor())}};
}

hyp::Geodesic geodesic_from_json(const json& j) {
    if (!j.is_object() || !j.contains("frame")) throw SchemaViolation("geodesic needs a frame");
    return hyp::Geodesic::from_frame(isometry_from(j.at("frame")));
}

json to_json(const Box& b) {
    return {{"lo", point_json(b.lo, b.dim)}, {"hi", point_json(b.hi, b.dim)}};
}

Box box_from_json(const json& j) {
    const auto lo = get<json>(j, "lo");
    if (!lo.is_array() || lo.empty() || lo.size() > static_cast<std::size_t>(kMaxDim)) {
        throw SchemaViolation("box dimension out of range");
    }
    const int dim = static_cast<int>(lo.size());
    try {
        return Box::make(dim, point_from(lo, dim), point_from(get<json>(j, "hi"), dim));
    } catch (const InvalidArgument& e) {
        throw SchemaViolation(e.what());
    }
}

// ---------------------------------------------------------------- point sets

json pointset_to_json(const WindowedPointSet& s, const json& params) {
    json p = params;
    if (s.epsilon) p["epsilon"] = *s.epsilon;
    if (s.delta) p["delta"] = *s.delta;
    json coords = json::array();
    for (const Point& q : s.points) {
        if (s.dim == 1) {
            coords.push_back(q[0]);
        } else {
            coords.push_back(point_json(q, s.dim));
        }
    }
    json flags = json::array();
    for (bool f : s.flags) flags.push_back(f);
    return {{"kind", "pointset"}, {"dim", s.dim},       {"window", to_json(s.window)}, {"torus", s.torus},
            {"params", p},        {"coords", coords}, {"flags", flags}};
}

WindowedPointSet pointset_from_json(const json& j) {
    expect_kind(j, "pointset");
    WindowedPointSet s;
    s.dim = get<int>(j, "dim");
    if (s.dim < 1 || s.dim > kMaxDim) throw SchemaViolation("dim out of range");
    s.window = box_from_json(get<json>(j, "window"));
    if (s.window.dim != s.dim) throw SchemaViolation("window dimension differs from dim");
    s.torus = j.value("torus", false);
    const json params = j.value("params", json::object());
    if (params.contains("epsilon")) s.epsilon = params.at("epsilon").get<double>();
    if (params.contains("delta")) s.delta = params.at("delta").get<double>();
    const json coords = get<json>(j, "coords");
    if (!coords.is_array()) throw SchemaViolation("coords must be an array");
    for (const json& c : coords) {
        if (s.dim == 1) {
            if (!c.is_number()) throw SchemaViolation("dim-1 coords must be numbers");
            s.points.push_back({c.get<double>(), 0.0, 0.0});
        } else {
            s.points.push_back(point_from(c, s.dim));
        }
    }
    const json flags = j.value("flags", json::array());
    if (!flags.is_array() || (!flags.empty() && flags.size() != s.points.size())) {
        throw SchemaViolation("flags must be empty or parallel to coords");
    }
    for (const json& f : flags) s.flags.push_back(f.get<bool>());
    return s;
}

json projected_to_json(const cp::ProjectedSet& ps, const json& params) {
    json out;
    out["kind"] = "pointset";
    out["dim"] = 1;
    out["window"] = {{"lo", json::array({ps.t_lo})}, {"hi", json::array({ps.t_hi})}};
    out["torus"] = false;
    json p = params;
    p["t_lo"] = ps.t_lo;
    p["t_hi"] = ps.t_hi;
    out["params"] = p;
    out["coords"] = ps.coords;
    json flags = json::array();
    for (bool f : ps.boundary_flags) flags.push_back(f);
    out["flags"] = flags;
    return out;
}

cp::ProjectedSet projected_from_json(const json& j) {
    const WindowedPointSet s = pointset_from_json(j);
    if (s.dim != 1) throw SchemaViolation("projected sets are one-dimensional");
    cp::ProjectedSet ps;
    ps.t_lo = s.window.lo[0];
    ps.t_hi = s.window.hi[0];
    for (const Point& q : s.points) ps.coords.push_back(q[0]);
    ps.boundary_flags = s.flags;
    if (ps.boundary_flags.empty()) ps.boundary_flags.assign(ps.coords.size(), false);
    return ps;
}

// ---------------------------------------------------------------- surfaces

json surface_to_json(const surface::SurfaceGroup& g) {
    const auto& poly = g.polygon();
    json vertices = json::array();
    for (const auto& v : poly.vertices) vertices.push_back(to_json(v));
    json gens = json::array();
    for (const auto& gen : g.generators()) {
        gens.push_back({{"label", gen.label},
                        {"matrix", to_json(gen.matrix)},
                        {"source_side", gen.source_side},
                        {"target_side", gen.target_side}});
    }
    json cycles = json::array();
    for (const auto& c : g.vertex_cycles()) {
        cycles.push_back({{"vertices", c.vertices},
                          {"word", c.word},
                          {"angle_sum", c.angle_sum},
                          {"identity_residual", c.identity_residual}});
    }
    return {{"kind", "surface"},
            {"spec",
             {{"angles", g.spec().angles},
              {"pairing", g.spec().pairing},
              {"expected_cycle_sizes", g.spec().expected_cycle_sizes}}},
            {"polygon",
             {{"center", to_json(poly.center)},
              {"side_length", poly.side_length},
              {"radius_sharp", poly.radius_sharp},
              {"radius_obtuse", poly.radius_obtuse},
              {"apothem", poly.apothem},
              {"max_side_error", poly.max_side_error},
              {"max_angle_error", poly.max_angle_error},
              {"area", poly.area}}},
            {"vertices", vertices},
            {"generators", gens},
            {"cycles", cycles},
            {"base_point", to_json(g.base_point())},
            {"mu", g.injectivity_radius_at_base()}};
}

surface::SurfaceGroup surface_from_json(const json& j) {
    expect_kind(j, "surface");
    const json spec_j = get<json>(j, "spec");
    surface::PolygonSpec spec;
    spec.angles = get<std::vector<double>>(spec_j, "angles");
    spec.pairing = get<std::string>(spec_j, "pairing");
    spec.expected_cycle_sizes = spec_j.value("expected_cycle_sizes", std::vector<std::size_t>{});

    const json poly_j = get<json>(j, "polygon");
    surface::SolvedPolygon poly;
    poly.center = hpoint_from(get<json>(poly_j, "center"));
    poly.side_length = get<double>(poly_j, "side_length");
    poly.radius_sharp = get<double>(poly_j, "radius_sharp");
    poly.radius_obtuse = get<double>(poly_j, "radius_obtuse");
    poly.apothem = get<double>(poly_j, "apothem");
    poly.max_side_error = get<double>(poly_j, "max_side_error");
    poly.max_angle_error = get<double>(poly_j, "max_angle_error");
    poly.area = get<double>(poly_j, "area");
    for (const json& v : get<json>(j, "vertices")) poly.vertices.push_back(hpoint_from(v));

    std::vector<surface::Generator> gens;
    for (const json& gj : get<json>(j, "generators")) {
        gens.push_back({get<std::string>(gj, "label"), isometry_from(get<json>(gj, "matrix")),
                        get<int>(gj, "source_side"), get<int>(gj, "target_side")});
    }
    std::vector<surface::VertexCycle> cycles;
    for (const json& cj : get<json>(j, "cycles")) {
        cycles.push_back({get<std::vector<int>>(cj, "vertices"), get<std::vector<std::string>>(cj, "word"),
                          get<double>(cj, "angle_sum"), get<double>(cj, "identity_residual")});
    }
    return surface::SurfaceGroup::from_parts(std::move(spec), std::move(poly), std::move(gens),
                                             std::move(cycles), hpoint_from(get<json>(j, "base_point")),
                                             get<double>(j, "mu"));
}

// ---------------------------------------------------------------- reports

json to_json(const analysis::DeloneReport& r) {
    return {{"min_gap", std::isfinite(r.min_gap) ? json(r.min_gap) : json(nullptr)},
            {"max_gap", r.max_gap},
            {"covering_radius", r.covering_radius},
            {"separated_ok", r.separated_ok},
            {"dense_ok", r.dense_ok},
            {"margin", r.margin},
            {"boundary_flag_count", r.boundary_flag_count},
            {"point_count", r.point_count},
            {"probe_count", r.probe_count}};
}

json to_json(const chaos::ClosedGeodesic& c) {
    return {{"element", to_json(c.element)},
            {"length", c.length},
            {"axis", to_json(c.axis)},
            {"word_length", c.word_length}};
}

json to_json(const chaos::LengthSpectrum& s) { return {{"lengths", s.lengths}, {"cutoff", s.cutoff}}; }

json to_json(const chaos::DalboResult& d) {
    return {{"arithmetic_like", d.arithmetic_like},
            {"witness_omega", d.witness_omega ? json(*d.witness_omega) : json(nullptr)}};
}

json to_json(const chaos::ApproxResult& a) {
    return {{"k", to_json(a.k)},
            {"reversed_matched", a.reversed_matched},
            {"verified", a.verified},
            {"axis_deviation", a.axis_deviation},
            {"candidates_checked", a.candidates_checked}};
}

json to_json(const chaos::MatchResult& m) {
    return {{"a", m.a},
            {"verified", m.verified},
            {"reversed", m.reversed},
            {"candidates_checked", m.candidates_checked}};
}

json to_json(const chaos::TauEstimate& t) {
    return {{"sup_estimate", t.sup_estimate},
            {"tangency_suspects", t.tangency_suspects},
            {"truncated", t.truncated},
            {"samples", t.samples}};
}

json to_json(const chaos::ConditionReport& c) {
    return {{"condition_a", c.condition_a}, {"rho", c.rho},         {"mu", c.mu},
            {"tau", to_json(c.tau)},        {"horizon", c.horizon}, {"verdict", chaos::to_string(c.verdict)}};
}

json to_json(const euclid::VqResult& v) {
    json out = {{"member", v.member}};
    out["witness"] = v.witness ? point_json(*v.witness, kMaxDim) : json(nullptr);
    return out;
}

json to_json(const euclid::WResult& w) {
    json out = {{"member", w.member}};
    if (w.witness) {
        out["witness"] = {{"m", w.witness->m},
                          {"m_prime", w.witness->m_prime},
                          {"x", point_json(w.witness->x, kMaxDim)},
                          {"grid_period", w.witness->grid_period}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

// ---------------------------------------------------------------- files

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaViolation("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaViolation(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace delone::io
