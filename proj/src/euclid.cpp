#include "delone/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "delone/analysis.hpp"
#include "delone/errors.hpp"

namespace delone::euclid {

namespace {

std::size_t idx(int k) { return static_cast<std::size_t>(k); }

// Offset that moves edge candidates just outside a closed excluded box.
constexpr double kExcludeOffset = 1e-10;
constexpr double kSeparationTol = 1e-9;

Box hull(const Box& a, const Box& b) {
    Box out = a;
    for (int k = 0; k < a.dim; ++k) {
        out.lo[idx(k)] = std::min(a.lo[idx(k)], b.lo[idx(k)]);
        out.hi[idx(k)] = std::max(a.hi[idx(k)], b.hi[idx(k)]);
    }
    return out;
}

std::vector<Point> box_lattice(const Box& b, double h) {
    std::array<long long, 3> n{1, 1, 1};
    for (int k = 0; k < b.dim; ++k) {
        n[idx(k)] = static_cast<long long>(std::floor(b.side(k) / h + 1e-9)) + 1;
    }
    std::vector<Point> out;
    for (long long i = 0; i < n[0]; ++i) {
        for (long long j = 0; j < n[1]; ++j) {
            for (long long l = 0; l < n[2]; ++l) {
                const std::array<long long, 3> c{i, j, l};
                Point p{};
                for (int k = 0; k < b.dim; ++k) {
                    p[idx(k)] = std::min(b.lo[idx(k)] + h * static_cast<double>(c[idx(k)]), b.hi[idx(k)]);
                }
                out.push_back(p);
            }
        }
    }
    return out;
}

void require_separated(const std::vector<Point>& pts, int dim, double delta,
                       const std::optional<Point>& torus) {
    PointGrid grid(dim, delta, torus);
    for (const Point& p : pts) {
        if (grid.any_within(p, delta - kSeparationTol)) {
            throw NotSeparatedInput("input points closer than delta");
        }
        grid.insert(p);
    }
}

class Packer {
public:
    Packer(double delta, int dim, const std::vector<Box>& include, const std::vector<Box>& exclude,
           std::optional<Point> torus)
        : delta_(delta), dim_(dim), include_(include), exclude_(exclude), torus_(torus),
          grid_(dim, delta, torus) {}

    void add_fixed(const Point& p) { grid_.insert(canon(p)); all_.push_back(canon(p)); }

    void grid_pass(double h) {
        std::vector<Point> cands;
        for (const Box& b : include_) {
            for (const Point& p : box_lattice(b, h)) cands.push_back(canon(p));
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (const Point& c : cands) try_add(c);
    }

    void exact_completion() {
        for (const Box& b : include_) push_corners(b);
        for (const Box& b : exclude_) push_corners(b.inflated(kExcludeOffset));
        for (const Point& p : std::vector<Point>(all_)) generate(p);
        while (!queue_.empty()) {
            const Point c = queue_.top();
            queue_.pop();
            if (try_add(c)) generate(c);
        }
    }

    std::vector<Point> added() const { return added_; }

private:
    Point canon(const Point& p) const { return torus_ ? torus_canonical(p, dim_, *torus_) : p; }

    bool feasible(const Point& p) const {
        if (!torus_) {
            const bool inside = std::any_of(include_.begin(), include_.end(),
                                            [&](const Box& b) { return b.contains(p, 1e-12); });
            if (!inside) return false;
        }
        for (const Box& b : exclude_) {
            if (b.contains(p, 0.0)) return false;
        }
        return !grid_.any_within(p, delta_ - kSeparationTol);
    }

    bool try_add(const Point& p) {
        if (!feasible(p)) return false;
        grid_.insert(p);
        all_.push_back(p);
        added_.push_back(p);
        return true;
    }

    void push(const Point& p) { queue_.push(canon(p)); }

    void push_corners(const Box& b) {
        for (int mask = 0; mask < (1 << dim_); ++mask) {
            Point p{};
            for (int k = 0; k < dim_; ++k) p[idx(k)] = (mask >> k) & 1 ? b.hi[idx(k)] : b.lo[idx(k)];
            push(p);
        }
    }

    std::vector<Point> images(const Point& p) const {
        if (!torus_) return {p};
        std::vector<Point> out;
        for (int i = -1; i <= 1; ++i) {
            for (int j = (dim_ > 1 ? -1 : 0); j <= (dim_ > 1 ? 1 : 0); ++j) {
                Point q = p;
                q[0] += (*torus_)[0] * i;
                if (dim_ > 1) q[1] += (*torus_)[1] * j;
                out.push_back(q);
            }
        }
        return out;
    }

    void circle_edges(const Point& c, const Box& b) {
        for (int axis = 0; axis < 2; ++axis) {
            const int other = 1 - axis;
            for (double line : {b.lo[idx(axis)], b.hi[idx(axis)]}) {
                const double d = line - c[idx(axis)];
                if (std::abs(d) > delta_) continue;
                const double r = std::sqrt(std::max(0.0, delta_ * delta_ - d * d));
                for (double sgn : {-1.0, 1.0}) {
                    const double v = c[idx(other)] + sgn * r;
                    if (v < b.lo[idx(other)] - 1e-12 || v > b.hi[idx(other)] + 1e-12) continue;
                    Point p{};
                    p[idx(axis)] = line;
                    p[idx(other)] = v;
                    push(p);
                }
            }
        }
    }

    void generate(const Point& p) {
        for (int k = 0; k < dim_; ++k) {
            Point a = p;
            Point b = p;
            a[idx(k)] += delta_;
            b[idx(k)] -= delta_;
            push(a);
            push(b);
        }
        if (dim_ != 2) return;
        for (const Point& c : images(p)) {
            if (!torus_) {
                for (const Box& b : include_) circle_edges(c, b);
            }
            for (const Box& b : exclude_) circle_edges(c, b.inflated(kExcludeOffset));
        }
        for (const Point& q0 : grid_.points_within(p, 2.0 * delta_ + 1e-9)) {
            Point q = q0;
            if (torus_) {
                for (int k = 0; k < dim_; ++k) {
                    const double L = (*torus_)[idx(k)];
                    q[idx(k)] = p[idx(k)] + (q0[idx(k)] - p[idx(k)]) - L * std::round((q0[idx(k)] - p[idx(k)]) / L);
                }
            }
            const double dx = q[0] - p[0];
            const double dy = q[1] - p[1];
            const double d = std::hypot(dx, dy);
            if (d < 1e-12 || d > 2.0 * delta_) continue;
            const double h = std::sqrt(std::max(0.0, delta_ * delta_ - 0.25 * d * d));
            const double mx = p[0] + 0.5 * dx;
            const double my = p[1] + 0.5 * dy;
            push({mx - h * dy / d, my + h * dx / d, 0.0});
            push({mx + h * dy / d, my - h * dx / d, 0.0});
        }
    }

    double delta_;
    int dim_;
    std::vector<Box> include_;
    std::vector<Box> exclude_;
    std::optional<Point> torus_;
    PointGrid grid_;
    std::vector<Point> all_;
    std::vector<Point> added_;
    std::priority_queue<Point, std::vector<Point>, std::greater<>> queue_;
};

Point sides_of(const Box& b) {
    Point s{};
    for (int k = 0; k < b.dim; ++k) s[idx(k)] = b.side(k);
    return s;
}

void check_params(double epsilon, double delta) {
    if (!(delta > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("delta must be positive");
    if (epsilon < delta) throw ParamOrder("epsilon must be >= delta");
}

WindowedPointSet make_set(int dim, std::vector<Point> pts, const Box& window, bool torus,
                          double epsilon, double delta) {
    WindowedPointSet out;
    out.dim = dim;
    out.points = std::move(pts);
    out.window = window;
    out.torus = torus;
    out.epsilon = epsilon;
    out.delta = delta;
    out.sort_points();
    return out;
}

}  // namespace

// ---------------------------------------------------------------- regions

bool Region::contains(const Point& p, double tol) const {
    return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(p, tol); });
}

Box Region::bounding_box() const {
    if (boxes.empty()) throw InvalidArgument("empty region has no bounding box");
    Box out = boxes.front();
    for (const Box& b : boxes) out = hull(out, b);
    return out;
}

Region Region::shrunk(double e) const {
    Region out{dim, {}};
    for (const Box& b : boxes) {
        const Box s = b.inflated(-e);
        if (!s.empty()) out.boxes.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- packing

std::vector<Point> greedy_fill(const std::vector<Point>& fixed, double delta, int dim,
                               const std::vector<Box>& include, const std::vector<Box>& exclude,
                               std::optional<Point> torus_sides) {
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    Packer packer(delta, dim, include, exclude, torus_sides);
    for (const Point& p : fixed) packer.add_fixed(p);
    packer.grid_pass(0.5 * delta);
    if (dim <= 2) {
        packer.exact_completion();
    } else {
        packer.grid_pass(delta / 8.0);
    }
    return packer.added();
}

WindowedPointSet greedy_separated_complete(const WindowedPointSet& s, double delta,
                                           const Region& region) {
    if (region.dim != s.dim) throw InvalidArgument("region dimension differs from set dimension");
    const std::optional<Point> torus = s.torus ? std::optional<Point>(sides_of(s.window)) : std::nullopt;
    require_separated(s.points, s.dim, delta, torus);
    std::vector<Point> pts = s.points;
    for (const Point& p : greedy_fill(s.points, delta, s.dim, region.boxes, {}, torus)) pts.push_back(p);
    Box window = region.boxes.empty() ? s.window : region.bounding_box();
    if (!s.torus && s.window.dim == s.dim && !region.boxes.empty()) window = hull(window, s.window);
    if (s.torus) window = s.window;
    return make_set(s.dim, std::move(pts), window, s.torus, delta, delta);
}

WindowedPointSet inner_extend(const WindowedPointSet& s, const Region& a, double epsilon,
                              double delta) {
    check_params(epsilon, delta);
    if (a.dim != s.dim || a.boxes.empty()) throw InvalidArgument("region must match the set");
    for (const Box& b : a.boxes) {
        if (!s.window.contains(b.inflated(epsilon), 1e-9)) {
            throw WindowTooSmall("window must contain the region inflated by epsilon");
        }
    }
    std::vector<Point> base;
    for (const Point& p : s.points) {
        if (a.contains(p)) base.push_back(p);
    }
    require_separated(base, s.dim, delta, std::nullopt);
    std::vector<Point> pts = base;
    for (const Point& p : greedy_fill(base, delta, s.dim, a.boxes, a.shrunk(epsilon).boxes)) {
        pts.push_back(p);
    }
    return make_set(s.dim, std::move(pts), a.bounding_box(), false, epsilon, delta);
}

WindowedPointSet glue_extend(const WindowedPointSet& n, const Region& a, const Ambient& ambient,
                             double epsilon, double delta) {
    check_params(epsilon, delta);
    const int dim = n.dim;
    if (ambient.box.dim != dim || a.dim != dim) throw InvalidArgument("dimension mismatch");
    for (const Point& p : n.points) {
        if (!a.contains(p, 1e-9)) throw NotDeloneOnA("N has points outside A");
    }
    const std::optional<Point> torus =
        ambient.torus ? std::optional<Point>(sides_of(ambient.box)) : std::nullopt;
    std::vector<Point> pts;
    for (const Point& p : n.points) pts.push_back(torus ? torus_canonical(p, dim, *torus) : p);
    try {
        require_separated(pts, dim, delta, torus);
    } catch (const NotSeparatedInput&) {
        throw NotDeloneOnA("N is not delta-separated");
    }
    for (const Box& b : a.boxes) {
        WindowedPointSet probe;
        probe.dim = dim;
        probe.points = pts;
        probe.window = b.inflated(epsilon);
        const auto rep = analysis::check_delone(probe, epsilon, delta);
        if (!rep.dense_ok) throw NotDeloneOnA("N is not epsilon-dense in A");
    }
    for (const Point& p : greedy_fill(pts, delta, dim, {ambient.box}, a.boxes, torus)) pts.push_back(p);
    return make_set(dim, std::move(pts), ambient.box, ambient.torus, epsilon, delta);
}

// ---------------------------------------------------------------- V_q

VqResult vq_member(const WindowedPointSet& s, const VqParams& p) {
    if (!(p.alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    const int dim = s.dim;
    std::vector<Point> cands;
    for (const Point& x : s.points) {
        Point c{};
        for (int k = 0; k < dim; ++k) c[idx(k)] = x[idx(k)] - p.q[idx(k)];
        Box disk_box = Box::cube(dim, p.alpha).translated(c);
        if (s.window.contains(disk_box, 0.0)) cands.push_back(x);
    }
    if (cands.empty()) throw WindowTooSmall("no candidate disk lies inside the window");
    std::sort(cands.begin(), cands.end(), [&](const Point& a, const Point& b) {
        const double na = distance2(a, Point{}, dim);
        const double nb = distance2(b, Point{}, dim);
        if (na != nb) return na < nb;
        return a < b;
    });
    PointGrid grid(dim, std::max(2.0 * p.alpha, 1e-6));
    for (const Point& y : s.points) grid.insert(y);
    for (const Point& x : cands) {
        Point c{};
        for (int k = 0; k < dim; ++k) c[idx(k)] = x[idx(k)] - p.q[idx(k)];
        if (!grid.any_within(c, p.alpha)) return {true, x};
    }
    return {false, std::nullopt};
}

VqConstruction vq_construct(const VqParams& p, double epsilon, double delta, const Box& window) {
    check_params(epsilon, delta);
    if (!(p.alpha > 0.0 && p.alpha < delta / 4.0)) throw ParamOrder("need 0 < alpha < delta/4");
    const int dim = window.dim;
    const double qn = std::sqrt(distance2(p.q, Point{}, dim));
    if (qn <= p.alpha) throw InvalidArgument("V_q is empty when |q| <= alpha");
    std::vector<Point> fixed{Point{}};
    Point witness{};
    if (qn + p.alpha >= delta) {
        Point y{};
        for (int k = 0; k < dim; ++k) y[idx(k)] = p.q[idx(k)] * (1.0 + 2.0 * p.alpha / qn);
        fixed.push_back(y);
        witness = y;
    }
    for (const Point& f : fixed) {
        if (!window.contains(f)) throw InvalidArgument("window must contain the seed points");
    }
    std::vector<Point> pts = fixed;
    for (const Point& x : greedy_fill(fixed, delta, dim, {window}, {})) pts.push_back(x);
    return {make_set(dim, std::move(pts), window, false, delta, delta), witness};
}

// ---------------------------------------------------------------- W_{m,m′}

namespace {

// (S − s1, S − s2) ∈ N_{[−u,u]ⁿ, [−w,w]ⁿ}, evaluated without materializing shifts.
class ShiftChecker {
public:
    explicit ShiftChecker(const WindowedPointSet& s)
        : s_(s), sorted_(s.points), grid_(s.dim, 1.0) {
        std::sort(sorted_.begin(), sorted_.end());
        for (const Point& p : s.points) grid_.insert(p);
    }

    bool member(const Point& s1, const Point& s2, double u, double w) const {
        return one_way(s1, s2, u, w) && one_way(s2, s1, u, w);
    }

private:
    bool one_way(const Point& s1, const Point& s2, double u, double w) const {
        const int dim = s_.dim;
        const double tol = analysis::kEntourageTol;
        const Box region = Box::cube(dim, u).translated(s1);
        auto it = std::lower_bound(sorted_.begin(), sorted_.end(), region.lo[0] - tol,
                                   [](const Point& q, double v) { return q[0] < v; });
        for (; it != sorted_.end() && (*it)[0] <= region.hi[0] + tol; ++it) {
            const Point& y = *it;
            if (!region.contains(y, tol)) continue;
            Point c{};
            for (int k = 0; k < dim; ++k) c[idx(k)] = y[idx(k)] - s1[idx(k)] + s2[idx(k)];
            const Box target = Box::cube(dim, w).translated(c);
            bool found = false;
            for (const Point& z : grid_.points_within(c, w * std::sqrt(static_cast<double>(dim)) + tol)) {
                if (target.contains(z, tol)) {
                    found = true;
                    break;
                }
            }
            if (found) continue;
            if (!s_.window.contains(target, tol)) {
                throw WindowTooSmall("membership undecidable: partner search leaves the window");
            }
            return false;
        }
        return true;
    }

    const WindowedPointSet& s_;
    std::vector<Point> sorted_;
    PointGrid grid_;
};

std::vector<std::array<int, 3>> coefficient_vectors(int dim, int bound) {
    std::vector<std::array<int, 3>> out;
    const int b1 = dim > 1 ? bound : 0;
    const int b2 = dim > 2 ? bound : 0;
    for (int i = -bound; i <= bound; ++i) {
        for (int j = -b1; j <= b1; ++j) {
            for (int k = -b2; k <= b2; ++k) {
                if (i != 0 || j != 0 || k != 0) out.push_back({i, j, k});
            }
        }
    }
    return out;
}

}  // namespace

WResult w_member(const WindowedPointSet& s, int m, int m_prime, double grid_period,
                 const Box& search_box) {
    if (m < 1 || m_prime < 1) throw InvalidArgument("m and m' must be >= 1");
    if (!(grid_period > 0.0)) throw InvalidArgument("grid period must be positive");
    if (s.torus) throw InvalidArgument("W membership is defined for sets in ℝⁿ");
    const int dim = s.dim;
    const double reach = m_prime * grid_period + m;
    if (!s.window.contains(search_box.inflated(reach), 1e-9)) {
        throw WindowTooSmall("window must cover the search box inflated by m'·L + m");
    }
    const ShiftChecker checker(s);
    const auto coeffs = coefficient_vectors(dim, m_prime);
    for (const Point& x : box_lattice(search_box, 1.0 / (4.0 * m_prime))) {
        if (!checker.member(Point{}, x, m, 1.0 / m)) continue;
        bool ok = true;
        for (const auto& a : coeffs) {
            Point x2 = x;
            for (int k = 0; k < dim; ++k) x2[idx(k)] += grid_period * a[idx(k)];
            if (!checker.member(x, x2, m_prime, 1.0 / m_prime)) {
                ok = false;
                break;
            }
        }
        if (ok) return {true, WWitness{m, m_prime, x, grid_period}};
    }
    return {false, std::nullopt};
}

// ---------------------------------------------------------------- chaotify

double default_grid_period(int m, double epsilon, double delta) { return 2.0 * (m + delta + epsilon); }

ChaotifyResult chaotify(const WindowedPointSet& s, int m, int m_prime, double l, double epsilon,
                        double delta, std::optional<double> grid_period) {
    check_params(epsilon, delta);
    if (m < 1 || m_prime < 1) throw InvalidArgument("m and m' must be >= 1");
    if (!(l >= 0.0)) throw InvalidArgument("l must be nonnegative");
    if (s.torus) throw InvalidArgument("chaotify takes a set in ℝⁿ");
    const int dim = s.dim;
    const double L = grid_period.value_or(default_grid_period(m, epsilon, delta));
    if (L < 2.0 * (m + epsilon) + delta - 1e-12) {
        throw InvalidArgument("grid period must be at least 2(m + epsilon) + delta");
    }
    if (!s.window.contains(Box::cube(dim, m + epsilon + 1.0), 1e-9)) {
        throw WindowTooSmall("window must contain [-(m+eps+1), m+eps+1]^n");
    }

    ChaotifyResult res;
    // Stage 1: agree with S on [−m, m]ⁿ, Delone on the ε-larger box.
    const Region first = Region::of(Box::cube(dim, m + epsilon));
    res.inner = inner_extend(s, first, epsilon, delta);

    // Stage 2: a Delone set on the torus of side L containing the stage-1 set.
    res.torus_set = glue_extend(res.inner, first, Ambient::torus_of_side(dim, L), epsilon, delta);

    // Stage 3: unroll the torus set around the witness. The periodic part must
    // reach every window the W-membership test inspects around x + L·a.
    const double periodic = m_prime * L + m_prime + 1.0 / m_prime + 1.0;
    const double block_half = periodic + epsilon;
    const double core = std::max(l, static_cast<double>(m));
    res.core_half_width = core;
    const double bound = std::max(l + (m_prime + 1) * L + epsilon + 1.0, core + 2.0 * epsilon + block_half);
    const double h = 1.0 / (4.0 * m_prime);
    const double x0 = (std::floor(bound / h) + 1.0) * h;
    Point x{};
    x[0] = x0;
    const Box block_box = Box::cube(dim, block_half).translated(x);
    const Box lift_box = block_box.inflated(epsilon);

    WindowedPointSet lift;
    lift.dim = dim;
    lift.window = lift_box;
    const auto kmax = static_cast<int>(std::ceil((block_half + epsilon) / L)) + 1;
    for (const Point& t : res.torus_set.points) {
        for (int i = -kmax; i <= kmax; ++i) {
            for (int j = (dim > 1 ? -kmax : 0); j <= (dim > 1 ? kmax : 0); ++j) {
                for (int k = (dim > 2 ? -kmax : 0); k <= (dim > 2 ? kmax : 0); ++k) {
                    const std::array<int, 3> a{i, j, k};
                    Point p{};
                    for (int c = 0; c < dim; ++c) p[idx(c)] = x[idx(c)] + t[idx(c)] + L * a[idx(c)];
                    if (lift_box.contains(p)) lift.points.push_back(p);
                }
            }
        }
    }
    lift.sort_points();
    res.block = inner_extend(lift, Region::of(block_box), epsilon, delta);

    // Stage 4: S near the origin, the periodic block near x, glued into one set.
    const Box core_box = Box::cube(dim, core + epsilon);
    res.core = inner_extend(s, Region::of(core_box), epsilon, delta);
    WindowedPointSet n;
    n.dim = dim;
    n.points = res.core.points;
    n.points.insert(n.points.end(), res.block.points.begin(), res.block.points.end());
    const Region a{dim, {core_box, block_box}};
    Box ambient = hull(s.window, block_box);
    ambient = hull(ambient, Box::cube(dim, m_prime * L + m + 1.0).translated(x));
    n.window = ambient;
    res.s_hat = glue_extend(n, a, Ambient::euclidean(ambient), epsilon, delta);
    res.witness = WWitness{m, m_prime, x, L};
    return res;
}

}  // namespace delone::euclid
