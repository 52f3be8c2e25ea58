#include "delone/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "delone/analysis.hpp"
#include "delone/errors.hpp"

namespace delone::chaos {

namespace {

constexpr double kPi = std::numbers::pi;

using hyp::Geodesic;
using hyp::HPoint;
using hyp::Isometry;
using hyp::UnitTangent;

// Angle of an ideal point on the boundary of the disk model.
double disk_angle(hyp::BoundaryPoint p) {
    if (p.infinite) return kPi / 2.0;
    const double x = p.value;
    return hyp::normalize_angle(std::atan2(x * x - 1.0, 2.0 * x));
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            auto& p = parent[static_cast<std::size_t>(a)];
            p = parent[static_cast<std::size_t>(p)];
            a = p;
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Isometry taking z to i by a real affine map.
Isometry to_i(HPoint z) {
    const double r = std::sqrt(z.y);
    return {1.0 / r, -z.x / r, 0.0, r};
}

double halton(std::size_t index, std::size_t base) {
    double f = 1.0;
    double out = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        out += f * static_cast<double>(index % base);
        index /= base;
    }
    return out;
}

// Distance between unit tangents: base distance plus direction difference after
// parallel-free comparison of Euclidean angles (the metric is conformal and the
// bases are close whenever this is small).
double tangent_distance(const UnitTangent& a, const UnitTangent& b) {
    return hyp::dist(a.base, b.base) + hyp::angle_between(a.direction, b.direction);
}

}  // namespace

// ---------------------------------------------------------------- closed geodesics

std::vector<ClosedGeodesic> enumerate_closed(const surface::SurfaceGroup& group, double length_cutoff,
                                             const surface::Budget& budget) {
    if (!(length_cutoff > 0.0) || !std::isfinite(length_cutoff)) {
        throw InvalidArgument("length cutoff must be positive");
    }
    const double rc = group.circumradius();
    const double ball_radius =
        2.0 * std::asinh(std::cosh(rc) * std::sinh(0.5 * length_cutoff)) + 1e-9;
    const auto ball = surface::group_ball(group, ball_radius, budget);
    const HPoint base = group.base_point();
    const auto& verts = group.polygon().vertices;

    struct Cand {
        std::size_t ball_index;
        double length;
        hyp::Axis axis;
        double a_alpha;
        double a_omega;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const Isometry& g = ball[i].element;
        if (ball[i].word_length == 0) continue;
        const double tr = g.abs_trace();
        if (tr <= 2.0 + 1e-9) continue;
        const double len = 2.0 * std::acosh(0.5 * tr);
        if (len > length_cutoff + 1e-12) continue;
        const hyp::Axis ax = hyp::axis_and_length(g, base);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const HPoint& v : verts) {
            const double s = hyp::project_to_geodesic(ax.axis, v).s;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (lo > 1e-7 || hi < -1e-7) continue;
        cands.push_back({i, len, ax, disk_angle(ax.axis.alpha()), disk_angle(ax.axis.omega())});
    }

    // Primitivity: β^k shares its axis and orientation with β.
    std::vector<std::size_t> by_alpha(cands.size());
    std::iota(by_alpha.begin(), by_alpha.end(), std::size_t{0});
    std::sort(by_alpha.begin(), by_alpha.end(),
              [&](std::size_t a, std::size_t b) { return cands[a].a_alpha < cands[b].a_alpha; });
    std::vector<double> sorted_alpha;
    for (std::size_t i : by_alpha) sorted_alpha.push_back(cands[i].a_alpha);
    constexpr double kAxisTol = 1e-7;
    std::vector<bool> primitive(cands.size(), true);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
            const double target = cands[i].a_alpha + shift;
            auto it = std::lower_bound(sorted_alpha.begin(), sorted_alpha.end(), target - kAxisTol);
            for (; it != sorted_alpha.end() && *it <= target + kAxisTol; ++it) {
                const Cand& other = cands[by_alpha[static_cast<std::size_t>(it - sorted_alpha.begin())]];
                if (hyp::angle_between(other.a_omega, cands[i].a_omega) > kAxisTol) continue;
                const double ratio = cands[i].length / other.length;
                const double k = std::round(ratio);
                if (k >= 2.0 && std::abs(ratio - k) <= 1e-7 * k) primitive[i] = false;
            }
        }
    }

    surface::OrbitLookup lookup;
    std::vector<int> kept;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (!primitive[i]) continue;
        lookup.insert(ball[cands[i].ball_index].point, static_cast<int>(i));
        kept.push_back(static_cast<int>(i));
    }
    UnionFind uf(cands.size());
    const auto gens = group.generator_matrices();
    for (int i : kept) {
        const Isometry& g = ball[cands[static_cast<std::size_t>(i)].ball_index].element;
        for (const Isometry& h : gens) {
            const Isometry c = h.inverse() * g * h;
            if (auto j = lookup.find(c.apply(base))) uf.unite(i, *j);
        }
    }

    std::map<int, std::size_t> best;  // root -> candidate index
    auto better = [&](std::size_t a, std::size_t b) {
        const auto& pa = ball[cands[a].ball_index];
        const auto& pb = ball[cands[b].ball_index];
        if (pa.word_length != pb.word_length) return pa.word_length < pb.word_length;
        return pa.element < pb.element;
    };
    for (int i : kept) {
        const int root = uf.find(i);
        auto [it, inserted] = best.try_emplace(root, static_cast<std::size_t>(i));
        if (!inserted && better(static_cast<std::size_t>(i), it->second)) it->second = static_cast<std::size_t>(i);
    }
    std::vector<ClosedGeodesic> out;
    for (const auto& [root, i] : best) {
        const auto& op = ball[cands[i].ball_index];
        out.push_back({op.element, cands[i].length, cands[i].axis.axis, op.word_length});
    }
    std::sort(out.begin(), out.end(), [](const ClosedGeodesic& a, const ClosedGeodesic& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.element < b.element;
    });
    return out;
}

LengthSpectrum length_spectrum(const std::vector<ClosedGeodesic>& closed, double cutoff) {
    LengthSpectrum out;
    out.cutoff = cutoff;
    std::vector<double> all;
    for (const auto& c : closed) {
        if (c.length <= cutoff) all.push_back(c.length);
    }
    std::sort(all.begin(), all.end());
    for (double l : all) {
        if (out.lengths.empty() || l - out.lengths.back() > 1e-6) out.lengths.push_back(l);
    }
    return out;
}

DalboResult dalbo_check(const LengthSpectrum& spectrum, double omega_min, double tol) {
    if (spectrum.lengths.empty()) throw InvalidArgument("empty length spectrum");
    if (!(omega_min > 0.0)) throw InvalidArgument("omega_min must be positive");
    const double lmin = spectrum.lengths.front();
    for (int n = 1;; ++n) {
        double omega = lmin / n;
        if (omega < omega_min - tol) break;
        for (int pass = 0; pass < 2; ++pass) {
            double num = 0.0;
            double den = 0.0;
            for (double l : spectrum.lengths) {
                const double m = std::max(1.0, std::round(l / omega));
                num += m * l;
                den += m * m;
            }
            omega = num / den;
        }
        if (omega < omega_min) continue;
        bool ok = true;
        for (double l : spectrum.lengths) {
            const double m = std::max(1.0, std::round(l / omega));
            if (std::abs(l - m * omega) > tol) {
                ok = false;
                break;
            }
        }
        if (ok) return {true, omega};
    }
    return {false, std::nullopt};
}

// ---------------------------------------------------------------- reduction along ℓ

namespace {

struct Reduced {
    double t = 0.0;
    int node = -1;
    UnitTangent w;  ///< α⁻¹·ℓ′(t) near the base point, α the nearest orbit element
};

struct Reduction {
    std::vector<surface::TubePoint> tube;
    std::vector<Reduced> samples;
};

Reduction reduce_along(const surface::SurfaceGroup& group, const Geodesic& ell, double t0, double t1,
                       double step) {
    Reduction out;
    const double reach = group.circumradius() + 0.1;
    out.tube = surface::orbit_near_segment(group, ell, t0, t1, reach);
    std::vector<double> ts;
    for (const auto& tp : out.tube) ts.push_back(tp.coords.t);
    const Isometry finv = ell.frame().inverse();
    const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9)) + 1;
    for (std::size_t j = 0; j < count; ++j) {
        const double t = t0 + static_cast<double>(j) * step;
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        auto it = std::lower_bound(ts.begin(), ts.end(), t - reach - 0.1);
        for (; it != ts.end() && *it <= t + reach + 0.1; ++it) {
            const auto k = static_cast<std::size_t>(it - ts.begin());
            const double d = hyp::distance_from_coords(out.tube[k].coords, t);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(k);
            }
        }
        if (best < 0) continue;
        const UnitTangent along{{0.0, std::exp(t)}, kPi / 2.0};
        const UnitTangent w =
            finv.apply(out.tube[static_cast<std::size_t>(best)].framed_element.inverse().apply(along));
        out.samples.push_back({t, best, w});
    }
    return out;
}

// Tube graph: tube nodes joined when their elements differ by one generator.
std::vector<std::vector<int>> tube_graph(const surface::SurfaceGroup& group, const Geodesic& ell,
                                         const std::vector<surface::TubePoint>& tube) {
    surface::OrbitLookup lookup;
    for (std::size_t i = 0; i < tube.size(); ++i) lookup.insert(tube[i].framed_point, static_cast<int>(i));
    const Isometry& f = ell.frame();
    const Isometry finv = f.inverse();
    const HPoint base = f.apply(group.base_point());
    std::vector<Isometry> gens;
    for (const Isometry& g : group.generator_matrices()) gens.push_back(f * g * finv);
    std::vector<std::vector<int>> adj(tube.size());
    for (std::size_t i = 0; i < tube.size(); ++i) {
        for (const Isometry& g : gens) {
            const HPoint p = (tube[i].framed_element * g).apply(base);
            if (auto j = lookup.find(p)) adj[i].push_back(*j);
        }
    }
    return adj;
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int start, int limit) {
    std::vector<int> d(adj.size(), -1);
    std::queue<int> q;
    d[static_cast<std::size_t>(start)] = 0;
    q.push(start);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        if (d[static_cast<std::size_t>(u)] >= limit) continue;
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (d[static_cast<std::size_t>(v)] < 0) {
                d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
        }
    }
    return d;
}

}  // namespace

cp::ProjectedSet reflect(const cp::ProjectedSet& ps) {
    cp::ProjectedSet out;
    out.t_lo = -ps.t_hi;
    out.t_hi = -ps.t_lo;
    for (std::size_t i = ps.size(); i-- > 0;) {
        out.coords.push_back(-ps.coords[i]);
        out.boundary_flags.push_back(ps.boundary_flags[i]);
    }
    for (std::size_t i = ps.provenance.size(); i-- > 0;) {
        surface::TubePoint tp = ps.provenance[i];
        tp.coords.t = -tp.coords.t;
        tp.coords.s = -tp.coords.s;
        out.provenance.push_back(tp);
    }
    return out;
}

// ---------------------------------------------------------------- approximation

ApproxResult approx_by_closed(const surface::SurfaceGroup& group, const Geodesic& ell, double r,
                              const cp::TubeConfig& cfg, const ApproxSearch& search) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be positive");
    cfg.validate();
    const double window = r + 1.0 / r + 1.0;
    const double inner = window + 2.0;
    if (search.horizon <= inner + search.sample_step) {
        throw InvalidArgument("search horizon too short for r");
    }
    const Reduction red = reduce_along(group, ell, -search.horizon, search.horizon, search.sample_step);
    const auto adj = tube_graph(group, ell, red.tube);

    struct Pair {
        double d;
        std::size_t i;
        std::size_t j;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < red.samples.size(); ++i) {
        if (red.samples[i].t > -inner) continue;
        for (std::size_t j = 0; j < red.samples.size(); ++j) {
            if (red.samples[j].t < inner) continue;
            pairs.push_back({tangent_distance(red.samples[i].w, red.samples[j].w), i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.d != b.d) return a.d < b.d;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    if (pairs.size() > search.pair_candidates) pairs.resize(search.pair_candidates);

    struct Cand {
        Isometry framed;
        double deviation;
        int word_length;
    };
    std::vector<Cand> cands;
    std::map<int, std::vector<int>> dist_cache;
    for (const Pair& p : pairs) {
        const int ni = red.samples[p.i].node;
        const int nj = red.samples[p.j].node;
        if (ni == nj) continue;
        auto it = dist_cache.find(ni);
        if (it == dist_cache.end()) it = dist_cache.emplace(ni, bfs(adj, ni, search.max_word_length)).first;
        const int wl = it->second[static_cast<std::size_t>(nj)];
        if (wl < 0) continue;
        const Isometry g = red.tube[static_cast<std::size_t>(nj)].framed_element *
                           red.tube[static_cast<std::size_t>(ni)].framed_element.inverse();
        if (g.abs_trace() <= 2.0 + 1e-9) continue;
        const hyp::Axis ax = hyp::axis_and_length(g);
        const double up = hyp::project_to_geodesic(ax.axis, {0.0, std::exp(window)}).t;
        const double down = hyp::project_to_geodesic(ax.axis, {0.0, std::exp(-window)}).t;
        if (!(up > down)) continue;
        double dev = 0.0;
        for (double t = -window; t <= window + 1e-12; t += 0.125) {
            dev = std::max(dev, std::abs(hyp::project_to_geodesic(ax.axis, {0.0, std::exp(t)}).s));
        }
        if (std::any_of(cands.begin(), cands.end(),
                        [&](const Cand& c) { return c.framed.distance_to(g) <= 1e-9; })) {
            continue;
        }
        cands.push_back({g, dev, wl});
    }
    if (cands.empty()) throw NotFoundWithinBudget("no shadowing element found along the geodesic");
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.deviation < b.deviation; });

    const Isometry& f = ell.frame();
    const Isometry finv = f.inverse();
    const analysis::Entourage n_r = analysis::Entourage::from_r(1, r);
    const auto s_ell = analysis::from_projected(cp::cut_project(group, ell, cfg, -window, window));

    ApproxResult result;
    const std::size_t limit = std::min(cands.size(), search.verify_candidates);
    for (std::size_t c = 0; c < limit; ++c) {
        const Isometry g = finv * cands[c].framed * f;
        const Geodesic axis_framed = hyp::axis_and_length(cands[c].framed).axis;
        const Geodesic k = axis_framed.transformed(finv);
        ApproxResult attempt;
        attempt.candidates_checked = c + 1;
        attempt.axis_deviation = cands[c].deviation;
        attempt.reversed_matched = search.reversed;
        attempt.k.length = hyp::translation_length(g);
        attempt.k.word_length = cands[c].word_length;
        cp::ProjectedSet s_k;
        if (search.reversed) {
            attempt.k.element = g.inverse();
            attempt.k.axis = k.reversed();
            s_k = reflect(cp::cut_project(group, attempt.k.axis, cfg, -window, window));
        } else {
            attempt.k.element = g;
            attempt.k.axis = k;
            s_k = cp::cut_project(group, k, cfg, -window, window);
        }
        attempt.verified = analysis::entourage_member(s_ell, analysis::from_projected(s_k), n_r);
        if (c == 0 || attempt.verified) result = attempt;
        if (attempt.verified) return result;
    }
    result.candidates_checked = limit;
    return result;
}

MatchResult translate_match(const surface::SurfaceGroup& group, const Geodesic& ell,
                            const Geodesic& k_target, double s, double window,
                            const cp::TubeConfig& cfg) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("s must be positive");
    const double reach = s + 1.0 / s + 1.0;
    if (!(window > reach)) throw InvalidArgument("window must exceed s + 1/s + 1");
    const cp::ProjectedSet s_ell = cp::cut_project(group, ell, cfg, -window, window);
    const auto ell_set = analysis::from_projected(s_ell);
    const cp::ProjectedSet s_k = cp::cut_project(group, k_target, cfg, -reach, reach);
    const analysis::Entourage n_s = analysis::Entourage::from_r(1, s);

    MatchResult out;
    for (bool reversed : {false, true}) {
        const cp::ProjectedSet target = reversed ? reflect(s_k) : s_k;
        const auto target_set = analysis::from_projected(target);
        std::vector<double> refs;
        for (double c : target.coords) {
            if (std::abs(c) <= s) refs.push_back(c);
        }
        std::vector<double> shifts;
        if (refs.empty()) {
            // Target empty near 0: the translate must be empty there as well.
            for (std::size_t i = 0; i + 1 < s_ell.size(); ++i) {
                if (s_ell.coords[i + 1] - s_ell.coords[i] > 2.0 * s) {
                    shifts.push_back(0.5 * (s_ell.coords[i] + s_ell.coords[i + 1]));
                }
            }
        } else {
            const double ref = *std::min_element(refs.begin(), refs.end(),
                                                 [](double a, double b) { return std::abs(a) < std::abs(b); });
            for (double c : s_ell.coords) shifts.push_back(c - ref);
        }
        std::sort(shifts.begin(), shifts.end(), [](double a, double b) {
            if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
            return a < b;
        });
        for (double a : shifts) {
            if (std::abs(a) > window - reach) continue;
            ++out.candidates_checked;
            if (analysis::entourage_member(ell_set.translated({-a, 0.0, 0.0}), target_set, n_s)) {
                out.a = a;
                out.verified = true;
                out.reversed = reversed;
                return out;
            }
        }
    }
    throw NotFoundWithinBudget("no translate matches the target within the window");
}

// ---------------------------------------------------------------- τ and conditions

std::optional<double> tau_of(const surface::SurfaceGroup& group, const UnitTangent& v, double rho,
                             double horizon, double* closest_approach) {
    if (!(rho > 0.0) || !(horizon > 0.0)) throw InvalidArgument("rho and horizon must be positive");
    const Geodesic line = Geodesic::from_tangent(v);
    for (double w = std::min(2.0, horizon);; w = std::min(2.0 * w, horizon)) {
        const auto tube = surface::orbit_near_segment(group, line, -w, w, rho);
        double best = std::numeric_limits<double>::infinity();
        double closest = std::numeric_limits<double>::infinity();
        for (const auto& tp : tube) {
            closest = std::min(closest, hyp::dist_to_segment(tp.coords, -w, w));
            const double s = std::abs(tp.coords.s);
            if (s >= rho) continue;
            const double h = std::acosh(std::cosh(rho) / std::cosh(s));
            const double lo = tp.coords.t - h;
            const double hi = tp.coords.t + h;
            const double d = (lo < 0.0 && hi > 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
            best = std::min(best, d);
        }
        if (best <= w || w >= horizon) {
            if (closest_approach) *closest_approach = closest;
            if (best <= w) return best;
            return std::nullopt;
        }
    }
}

TauEstimate tau_sup_estimate(const surface::SurfaceGroup& group, double rho, std::size_t base_points,
                             std::size_t directions, double horizon) {
    if (base_points == 0 || directions == 0) throw InvalidArgument("sample counts must be positive");
    if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
    TauEstimate out;
    for (const HPoint& p : sample_polygon_points(group, base_points)) {
        for (std::size_t j = 0; j < directions; ++j) {
            const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(directions);
            double closest = 0.0;
            const auto tau = tau_of(group, {p, theta}, rho, horizon, &closest);
            ++out.samples;
            if (std::abs(closest - rho) <= 1e-4) ++out.tangency_suspects;
            if (tau) {
                out.sup_estimate = std::max(out.sup_estimate, *tau);
            } else {
                ++out.truncated;
                out.sup_estimate = std::max(out.sup_estimate, horizon);
            }
        }
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail_A: return "fail_A";
        case Verdict::B_unverified: return "B_unverified";
        case Verdict::B_suspect: return "B_suspect";
    }
    return "unknown";
}

ConditionReport condition_check(const surface::SurfaceGroup& group, double rho, std::size_t base_points,
                                std::size_t directions, double horizon) {
    ConditionReport out;
    out.rho = rho;
    out.mu = group.injectivity_radius_at_base();
    out.horizon = horizon;
    out.condition_a = rho > 0.0 && rho < out.mu;
    if (!out.condition_a) {
        out.verdict = Verdict::fail_A;
        return out;
    }
    out.tau = tau_sup_estimate(group, rho, base_points, directions, horizon);
    if (out.tau.truncated > 0) {
        out.verdict = Verdict::B_unverified;
    } else if (out.tau.tangency_suspects > 0) {
        out.verdict = Verdict::B_suspect;
    } else {
        out.verdict = Verdict::pass;
    }
    return out;
}

double recurrence_fraction(const surface::SurfaceGroup& group, const Geodesic& ell, double horizon,
                           double tolerance, std::size_t base_points, std::size_t directions) {
    if (!(horizon > 0.0) || !(tolerance > 0.0)) throw InvalidArgument("horizon and tolerance must be positive");
    if (base_points == 0 || directions == 0) throw InvalidArgument("sample counts must be positive");
    const double step = std::min(0.1, 0.5 * tolerance);
    const Reduction red = reduce_along(group, ell, -horizon, horizon, step);
    std::size_t hit = 0;
    std::size_t total = 0;
    for (const HPoint& p : sample_polygon_points(group, base_points)) {
        for (std::size_t j = 0; j < directions; ++j) {
            const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(directions);
            const UnitTangent u{p, theta};
            ++total;
            for (const Reduced& r : red.samples) {
                if (tangent_distance(u, r.w) <= tolerance) {
                    ++hit;
                    break;
                }
            }
        }
    }
    return static_cast<double>(hit) / static_cast<double>(total);
}

std::vector<HPoint> sample_polygon_points(const surface::SurfaceGroup& group, std::size_t count) {
    const HPoint center = group.polygon().center;
    const Isometry back = to_i(center).inverse();
    const double disk_r = std::tanh(0.5 * group.circumradius());
    std::vector<HPoint> out;
    for (std::size_t i = 1; out.size() < count; ++i) {
        const double u = disk_r * (2.0 * halton(i, 2) - 1.0);
        const double v = disk_r * (2.0 * halton(i, 3) - 1.0);
        if (u * u + v * v >= disk_r * disk_r) continue;
        const HPoint z = back.apply(hyp::from_disk({u, v}));
        if (polygon_contains(group, z)) out.push_back(z);
    }
    return out;
}

bool polygon_contains(const surface::SurfaceGroup& group, HPoint z, double tol) {
    const auto& v = group.polygon().vertices;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const Geodesic side = Geodesic::through(v[j], v[(j + 1) % v.size()]);
        if (hyp::project_to_geodesic(side, z).s < -tol) return false;
    }
    return true;
}

}  // namespace delone::chaos
