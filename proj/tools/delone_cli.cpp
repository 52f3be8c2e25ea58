#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "delone/analysis.hpp"
#include "delone/chaos.hpp"
#include "delone/cut_project.hpp"
#include "delone/errors.hpp"
#include "delone/euclid.hpp"
#include "delone/io.hpp"
#include "delone/render.hpp"
#include "delone/surface.hpp"

using namespace delone;
using io::json;

namespace {

struct Options {
    std::uint64_t seed = 1;
    std::optional<double> rho;
    double rho_mu = 0.95;
    double window = 20.0;
    double r = 1.0;
    std::optional<std::size_t> budget_elements;
    std::optional<double> budget_seconds;
    std::string out;
    std::string surface_file;
    std::string mode = "plus_boundary";
};

Options opt;

surface::SurfaceGroup load_group() {
    if (opt.surface_file.empty()) return surface::standard_surface();
    return io::surface_from_json(io::read_file(opt.surface_file));
}

surface::Budget budget() {
    surface::Budget b;
    if (opt.budget_elements) b.max_elements = *opt.budget_elements;
    if (opt.budget_seconds) {
        b.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(*opt.budget_seconds));
    }
    return b;
}

cp::TubeConfig tube(const surface::SurfaceGroup& g) {
    cp::TubeConfig cfg;
    cfg.rho = opt.rho ? *opt.rho : opt.rho_mu * g.injectivity_radius_at_base();
    cfg.mode = cp::parse_tube_mode(opt.mode);
    return cfg;
}

hyp::Geodesic geodesic_for(std::uint64_t seed, const surface::SurfaceGroup& g) {
    return hyp::random_geodesic(seed, g.base_point());
}

void emit(const json& j) {
    if (opt.out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        io::write_file(opt.out, j);
    }
}

void emit_text(const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw InvalidArgument("cannot write " + opt.out);
    f << text;
}

WindowedPointSet load_set(const std::string& path) { return io::pointset_from_json(io::read_file(path)); }

Box make_box(const std::vector<double>& lo, const std::vector<double>& hi) {
    if (lo.size() != hi.size() || lo.empty() || lo.size() > static_cast<std::size_t>(kMaxDim)) {
        throw InvalidArgument("--lo and --hi need the same 1 to 3 coordinates");
    }
    Point a{};
    Point b{};
    for (std::size_t k = 0; k < lo.size(); ++k) {
        a[k] = lo[k];
        b[k] = hi[k];
    }
    return Box::make(static_cast<int>(lo.size()), a, b);
}

Point make_point(const std::vector<double>& v) {
    if (v.empty() || v.size() > static_cast<std::size_t>(kMaxDim)) throw InvalidArgument("point needs 1 to 3 coordinates");
    Point p{};
    for (std::size_t k = 0; k < v.size(); ++k) p[k] = v[k];
    return p;
}

json geodesic_params(std::uint64_t seed, const hyp::Geodesic& ell, const cp::TubeConfig& cfg) {
    return {{"seed", seed}, {"rho", cfg.rho}, {"mode", cp::to_string(cfg.mode)}, {"geodesic", io::to_json(ell)}};
}

// ---------------------------------------------------------------- surface / orbit / cutproject

int surface_solve() {
    emit(io::surface_to_json(load_group()));
    return 0;
}

int surface_validate() {
    const auto g = load_group();
    const double tol = default_policy().cycle_identity_tol;
    json cycles = json::array();
    bool ok = true;
    for (const auto& c : g.vertex_cycles()) {
        hyp::Isometry w;
        for (const auto& label : c.word) w = g.generator(label).matrix * w;
        const double residual = w.distance_to(hyp::Isometry::identity());
        const bool angle_ok = std::abs(c.angle_sum - 2.0 * std::numbers::pi) <= tol;
        ok = ok && residual <= tol && angle_ok;
        cycles.push_back({{"vertices", c.vertices}, {"word", c.word}, {"residual", residual},
                          {"angle_sum", c.angle_sum}});
    }
    std::vector<std::size_t> sizes;
    for (const auto& c : g.vertex_cycles()) sizes.push_back(c.vertices.size());
    std::sort(sizes.begin(), sizes.end());
    if (!g.spec().expected_cycle_sizes.empty() && sizes != g.spec().expected_cycle_sizes) ok = false;
    const double area_expected = std::numbers::pi * (static_cast<double>(g.spec().vertex_count()) - 2.0) -
                                 [&] {
                                     double s = 0.0;
                                     for (double a : g.spec().angles) s += a;
                                     return s;
                                 }();
    if (std::abs(g.polygon().area - area_expected) > tol) ok = false;
    emit({{"kind", "report"},
          {"command", "surface validate"},
          {"cycles", cycles},
          {"cycle_sizes", sizes},
          {"area", g.polygon().area},
          {"area_expected", area_expected},
          {"mu", g.injectivity_radius_at_base()},
          {"ok", ok}});
    return ok ? 0 : 2;
}

double ball_radius = 7.0;

int orbit_ball() {
    const auto g = load_group();
    const auto ball = surface::group_ball(g, ball_radius, budget());
    json elems = json::array();
    for (const auto& p : ball) {
        elems.push_back({{"point", io::to_json(p.point)}, {"element", io::to_json(p.element)},
                         {"word_length", p.word_length}, {"distance", p.distance}});
    }
    double min_disp = std::numeric_limits<double>::infinity();
    for (const auto& p : ball) {
        if (p.word_length > 0) min_disp = std::min(min_disp, p.distance);
    }
    emit({{"kind", "report"},
          {"command", "orbit ball"},
          {"radius", ball_radius},
          {"count", ball.size()},
          {"half_min_displacement", std::isfinite(min_disp) ? json(0.5 * min_disp) : json(nullptr)},
          {"elements", elems}});
    return 0;
}

int cutproject_run() {
    const auto g = load_group();
    const auto cfg = tube(g);
    const auto ell = geodesic_for(opt.seed, g);
    const auto ps = cp::cut_project(g, ell, cfg, -opt.window, opt.window, budget());
    emit(io::projected_to_json(ps, geodesic_params(opt.seed, ell, cfg)));
    return 0;
}

// ---------------------------------------------------------------- analyze

std::vector<std::string> inputs;
double epsilon = 3.0;
double delta = 0.1;
double p_min = 0.01;
double p_max = 10.0;
double r_max = 10.0;
std::vector<double> half_widths;  // a, b, c, d for compose

int analyze_delone() {
    if (inputs.size() != 1) throw InvalidArgument("analyze delone takes one --in");
    const auto s = load_set(inputs[0]);
    const auto rep = analysis::check_delone(s, epsilon, delta);
    json j = io::to_json(rep);
    j["kind"] = "report";
    j["command"] = "analyze delone";
    j["epsilon"] = epsilon;
    j["delta"] = delta;
    emit(j);
    return rep.separated_ok && rep.dense_ok ? 0 : 2;
}

int analyze_periods() {
    if (inputs.size() != 1) throw InvalidArgument("analyze periods takes one --in");
    const auto s = load_set(inputs[0]);
    const auto periods = analysis::find_periods(s, analysis::Entourage::from_r(1, opt.r), p_min, p_max);
    emit({{"kind", "report"}, {"command", "analyze periods"}, {"r", opt.r}, {"p_min", p_min}, {"p_max", p_max},
          {"periods", periods}});
    return 0;
}

int analyze_rubber() {
    if (inputs.size() != 2) throw InvalidArgument("analyze rubber takes two --in");
    const double prox = analysis::rubber_proximity(load_set(inputs[0]), load_set(inputs[1]), r_max);
    emit({{"kind", "report"}, {"command", "analyze rubber"}, {"r_max", r_max}, {"proximity", prox}});
    return 0;
}

int analyze_compose() {
    if (inputs.size() != 3) throw InvalidArgument("analyze compose takes three --in");
    if (half_widths.size() != 4) throw InvalidArgument("--half-widths needs a b c d");
    const auto s1 = load_set(inputs[0]);
    const auto s2 = load_set(inputs[1]);
    const auto s3 = load_set(inputs[2]);
    auto cube = [&](double h) { return Box::cube(s1.dim, h); };
    const bool holds = analysis::composition_check(cube(half_widths[0]), cube(half_widths[1]),
                                                   cube(half_widths[2]), cube(half_widths[3]), s1, s2, s3);
    emit({{"kind", "report"}, {"command", "analyze compose"}, {"half_widths", half_widths}, {"holds", holds}});
    return holds ? 0 : 2;
}

// ---------------------------------------------------------------- chaos

double cutoff = 8.0;
double omega_min = 0.01;
double tol = 1e-6;
std::uint64_t seed2 = 2;
double match_s = 1.0;
std::size_t grid = 64;
double horizon = 40.0;
int max_word_length = 12;

int chaos_closed() {
    const auto g = load_group();
    const auto closed = chaos::enumerate_closed(g, cutoff, budget());
    json list = json::array();
    for (const auto& c : closed) list.push_back(io::to_json(c));
    emit({{"kind", "report"}, {"command", "chaos closed"}, {"cutoff", cutoff}, {"count", closed.size()},
          {"closed", list}});
    return 0;
}

int chaos_spectrum() {
    const auto g = load_group();
    const auto spec = chaos::length_spectrum(chaos::enumerate_closed(g, cutoff, budget()), cutoff);
    json j = io::to_json(spec);
    j["kind"] = "report";
    j["command"] = "chaos spectrum";
    emit(j);
    return 0;
}

int chaos_dalbo() {
    const auto g = load_group();
    const auto spec = chaos::length_spectrum(chaos::enumerate_closed(g, cutoff, budget()), cutoff);
    const auto d = chaos::dalbo_check(spec, omega_min, tol);
    json j = io::to_json(d);
    j["kind"] = "report";
    j["command"] = "chaos dalbo";
    j["spectrum"] = io::to_json(spec);
    j["omega_min"] = omega_min;
    j["tol"] = tol;
    emit(j);
    return 0;
}

int chaos_approx() {
    const auto g = load_group();
    const auto cfg = tube(g);
    const auto ell = geodesic_for(opt.seed, g);
    chaos::ApproxSearch search;
    search.max_word_length = max_word_length;
    const auto a = chaos::approx_by_closed(g, ell, opt.r, cfg, search);
    json j = io::to_json(a);
    j["kind"] = "report";
    j["command"] = "chaos approx";
    j["r"] = opt.r;
    j["params"] = geodesic_params(opt.seed, ell, cfg);
    j["assumption"] = "the geodesic flow orbit of ell is dense (not verifiable)";
    emit(j);
    return a.verified ? 0 : 2;
}

int chaos_match() {
    const auto g = load_group();
    const auto cfg = tube(g);
    const auto ell = geodesic_for(opt.seed, g);
    const auto k = geodesic_for(seed2, g);
    const auto m = chaos::translate_match(g, ell, k, match_s, opt.window, cfg);
    json j = io::to_json(m);
    j["kind"] = "report";
    j["command"] = "chaos match";
    j["s"] = match_s;
    j["params"] = geodesic_params(opt.seed, ell, cfg);
    j["target"] = {{"seed", seed2}, {"geodesic", io::to_json(k)}};
    emit(j);
    return 0;
}

int chaos_tau() {
    const auto g = load_group();
    const auto cfg = tube(g);
    const auto t = chaos::tau_sup_estimate(g, cfg.rho, grid, grid, horizon);
    json j = io::to_json(t);
    j["kind"] = "report";
    j["command"] = "chaos tau";
    j["rho"] = cfg.rho;
    j["grid"] = {grid, grid};
    j["horizon"] = horizon;
    emit(j);
    return t.truncated == 0 ? 0 : 2;
}

int chaos_conditions() {
    const auto g = load_group();
    const auto cfg = tube(g);
    const auto c = chaos::condition_check(g, cfg.rho, grid, grid, horizon);
    json j = io::to_json(c);
    j["kind"] = "report";
    j["command"] = "chaos conditions";
    emit(j);
    return c.verdict == chaos::Verdict::pass ? 0 : 2;
}

// ---------------------------------------------------------------- euclid

std::vector<double> lo;
std::vector<double> hi;
std::vector<double> ambient_lo;
std::vector<double> ambient_hi;
std::optional<double> torus_side;
std::vector<double> q;
double alpha = 0.05;
int m = 1;
int m_prime = 1;
double l_half = 1.0;
std::optional<double> grid_period;

euclid::Region region_or_window(const WindowedPointSet& s) {
    if (lo.empty() && hi.empty()) return euclid::Region::of(s.window);
    return euclid::Region::of(make_box(lo, hi));
}

int euclid_complete() {
    if (inputs.size() != 1) throw InvalidArgument("euclid complete takes one --in");
    const auto s = load_set(inputs[0]);
    emit(io::pointset_to_json(euclid::greedy_separated_complete(s, delta, region_or_window(s)),
                              {{"delta", delta}}));
    return 0;
}

int euclid_inner() {
    if (inputs.size() != 1) throw InvalidArgument("euclid inner takes one --in");
    const auto s = load_set(inputs[0]);
    emit(io::pointset_to_json(euclid::inner_extend(s, euclid::Region::of(make_box(lo, hi)), epsilon, delta)));
    return 0;
}

int euclid_glue() {
    if (inputs.size() != 1) throw InvalidArgument("euclid glue takes one --in");
    const auto n = load_set(inputs[0]);
    const euclid::Ambient amb = torus_side ? euclid::Ambient::torus_of_side(n.dim, *torus_side)
                                           : euclid::Ambient::euclidean(make_box(ambient_lo, ambient_hi));
    emit(io::pointset_to_json(euclid::glue_extend(n, euclid::Region::of(make_box(lo, hi)), amb, epsilon, delta)));
    return 0;
}

int euclid_vq() {
    const euclid::VqParams p{make_point(q), alpha};
    if (!inputs.empty()) {
        const auto res = euclid::vq_member(load_set(inputs[0]), p);
        json j = io::to_json(res);
        j["kind"] = "report";
        j["command"] = "euclid vq";
        emit(j);
        return res.member ? 0 : 2;
    }
    const auto built = euclid::vq_construct(p, epsilon, delta, make_box(lo, hi));
    const auto check = euclid::vq_member(built.set, p);
    json j = io::pointset_to_json(built.set, {{"q", q}, {"alpha", alpha}});
    j["params"]["member"] = io::to_json(check);
    emit(j);
    return check.member ? 0 : 2;
}

int euclid_w() {
    if (inputs.size() != 1) throw InvalidArgument("euclid w takes one --in");
    const auto s = load_set(inputs[0]);
    const double period = grid_period ? *grid_period : euclid::default_grid_period(m, epsilon, delta);
    const auto res = euclid::w_member(s, m, m_prime, period, make_box(lo, hi));
    json j = io::to_json(res);
    j["kind"] = "report";
    j["command"] = "euclid w";
    emit(j);
    return res.member ? 0 : 2;
}

int euclid_chaotify() {
    if (inputs.size() != 1) throw InvalidArgument("euclid chaotify takes one --in");
    const auto res = euclid::chaotify(load_set(inputs[0]), m, m_prime, l_half, epsilon, delta, grid_period);
    json params = {{"m", m}, {"m_prime", m_prime}, {"l", l_half}, {"core_half_width", res.core_half_width}};
    params["witness"] = {{"x", json::array({res.witness.x[0], res.witness.x[1], res.witness.x[2]})},
                         {"grid_period", res.witness.grid_period}};
    emit(io::pointset_to_json(res.s_hat, params));
    return 0;
}

// ---------------------------------------------------------------- render

bool no_tube = false;

int render_cmd() {
    if (!inputs.empty()) {
        emit_text(render::line_svg(load_set(inputs[0])));
        return 0;
    }
    const auto g = load_group();
    render::DiskScene scene;
    scene.polygon = g.polygon().vertices;
    if (!no_tube) {
        const auto cfg = tube(g);
        const auto ell = geodesic_for(opt.seed, g);
        const auto ps = cp::cut_project(g, ell, cfg, -opt.window, opt.window, budget());
        scene.ell = ell;
        scene.rho = cfg.rho;
        scene.extent = opt.window;
        for (const auto& tp : ps.provenance) scene.orbit_points.push_back(tp.orbit.point);
        scene.projected = ps.coords;
    }
    emit_text(render::disk_svg(scene));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic cut-and-project Delone sets and Euclidean genericity constructions"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", opt.seed, "seed for the random geodesic");
    app.add_option("--rho", opt.rho, "tube radius (overrides --rho-mu)");
    app.add_option("--rho-mu", opt.rho_mu, "tube radius as a multiple of μ");
    app.add_option("--window", opt.window, "half-width of the parameter window");
    app.add_option("--r", opt.r, "entourage parameter r");
    app.add_option("--budget-elements", opt.budget_elements, "cap on enumerated group elements");
    app.add_option("--budget-seconds", opt.budget_seconds, "wall-clock cap for enumerations");
    app.add_option("--out", opt.out, "output file (default stdout)");
    app.add_option("--surface", opt.surface_file, "surface JSON (default: the standard 12-gon)");
    app.add_option("--mode", opt.mode, "tube mode: strict_interior, plus_boundary, closed");

    std::function<int()> action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, int (*fn)()) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };
    auto group_cmd = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->require_subcommand(1);
        return sub;
    };

    auto* surf = group_cmd("surface", "fundamental polygon and side pairings");
    leaf(surf, "solve", "solve the polygon and write the surface", surface_solve);
    leaf(surf, "validate", "check cycle words, angle sums and cycle sizes", surface_validate);

    auto* orbit = group_cmd("orbit", "orbit enumeration");
    leaf(orbit, "ball", "group elements moving the base point at most --radius", orbit_ball)
        ->add_option("--radius", ball_radius);

    auto* cpj = group_cmd("cutproject", "cut-and-project sets");
    leaf(cpj, "run", "project the ρ-tube orbit points onto a seeded geodesic", cutproject_run);

    auto* an = group_cmd("analyze", "Delone and entourage checks on point-set files");
    auto* ad = leaf(an, "delone", "separation and relative density", analyze_delone);
    ad->add_option("--in", inputs)->required();
    ad->add_option("--epsilon", epsilon);
    ad->add_option("--delta", delta);
    auto* ap = leaf(an, "periods", "approximate periods under N_r", analyze_periods);
    ap->add_option("--in", inputs)->required();
    ap->add_option("--p-min", p_min);
    ap->add_option("--p-max", p_max);
    auto* ar = leaf(an, "rubber", "largest r with the two sets N_r-close", analyze_rubber);
    ar->add_option("--in", inputs)->required()->expected(2);
    ar->add_option("--r-max", r_max);
    auto* ac = leaf(an, "compose", "composition of entourages on three sets", analyze_compose);
    ac->add_option("--in", inputs)->required()->expected(3);
    ac->add_option("--half-widths", half_widths, "a b c d")->expected(4);

    auto* ch = group_cmd("chaos", "closed geodesics, approximation and tangency sampling");
    leaf(ch, "closed", "primitive conjugacy classes up to --cutoff", chaos_closed)->add_option("--cutoff", cutoff);
    leaf(ch, "spectrum", "distinct closed-geodesic lengths", chaos_spectrum)->add_option("--cutoff", cutoff);
    auto* cd = leaf(ch, "dalbo", "is the spectrum inside some ωℕ", chaos_dalbo);
    cd->add_option("--cutoff", cutoff);
    cd->add_option("--omega-min", omega_min);
    cd->add_option("--tol", tol);
    leaf(ch, "approx", "closed geodesic whose set is N_r-close", chaos_approx)
        ->add_option("--max-word-length", max_word_length);
    auto* cm = leaf(ch, "match", "translate matching a second seeded geodesic", chaos_match);
    cm->add_option("--seed2", seed2);
    cm->add_option("--s", match_s);
    for (const char* name : {"tau", "conditions"}) {
        auto* c = leaf(ch, name, std::string(name) == "tau" ? "sup of τ over a sample grid" : "conditions A and B",
                       std::string(name) == "tau" ? chaos_tau : chaos_conditions);
        c->add_option("--grid", grid);
        c->add_option("--horizon", horizon);
    }

    auto* eu = group_cmd("euclid", "Euclidean genericity constructions");
    auto box_opts = [&](CLI::App* c) {
        c->add_option("--lo", lo)->expected(1, 3);
        c->add_option("--hi", hi)->expected(1, 3);
        c->add_option("--epsilon", epsilon);
        c->add_option("--delta", delta);
    };
    auto* ec = leaf(eu, "complete", "greedy maximal δ-separated completion", euclid_complete);
    ec->add_option("--in", inputs)->required();
    box_opts(ec);
    auto* ei = leaf(eu, "inner", "extend S inside A", euclid_inner);
    ei->add_option("--in", inputs)->required();
    box_opts(ei);
    auto* eg = leaf(eu, "glue", "extend N from A to the ambient", euclid_glue);
    eg->add_option("--in", inputs)->required();
    box_opts(eg);
    eg->add_option("--ambient-lo", ambient_lo)->expected(1, 3);
    eg->add_option("--ambient-hi", ambient_hi)->expected(1, 3);
    eg->add_option("--torus-side", torus_side);
    auto* ev = leaf(eu, "vq", "V_q membership (--in) or construction", euclid_vq);
    ev->add_option("--in", inputs);
    ev->add_option("--q", q)->required()->expected(1, 3);
    ev->add_option("--alpha", alpha);
    box_opts(ev);
    auto* ew = leaf(eu, "w", "W_{m,m′} membership", euclid_w);
    ew->add_option("--in", inputs)->required();
    ew->add_option("--m", m);
    ew->add_option("--m-prime", m_prime);
    ew->add_option("--grid-period", grid_period);
    box_opts(ew);
    auto* et = leaf(eu, "chaotify", "perturb S into W_{m,m′} keeping [−l, l]ⁿ", euclid_chaotify);
    et->add_option("--in", inputs)->required();
    et->add_option("--m", m);
    et->add_option("--m-prime", m_prime);
    et->add_option("--l", l_half);
    et->add_option("--grid-period", grid_period);
    et->add_option("--epsilon", epsilon);
    et->add_option("--delta", delta);

    auto* rd = app.add_subcommand("render", "SVG of the disk scene, or a tick plot of --in");
    rd->callback([&action] { action = render_cmd; });
    rd->add_option("--in", inputs);
    rd->add_flag("--no-tube", no_tube);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (!action) {
        std::cerr << "no command given\n";
        return 1;
    }
    try {
        return action();
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const NotFoundWithinBudget& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
