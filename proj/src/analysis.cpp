#include "delone/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "delone/errors.hpp"

namespace delone::analysis {

namespace {

std::size_t idx(int k) { return static_cast<std::size_t>(k); }

double norm2(const Point& p, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += p[idx(k)] * p[idx(k)];
    return s;
}

Point sides_of(const Box& b) {
    Point s{};
    for (int k = 0; k < b.dim; ++k) s[idx(k)] = b.side(k);
    return s;
}

// Sorted by first coordinate for slab queries.
struct SlabIndex {
    std::vector<Point> pts;
    explicit SlabIndex(std::vector<Point> p) : pts(std::move(p)) {
        std::sort(pts.begin(), pts.end());
    }
    template <class F>
    bool any_in(double x_lo, double x_hi, F pred) const {
        auto it = std::lower_bound(pts.begin(), pts.end(), x_lo,
                                   [](const Point& q, double v) { return q[0] < v; });
        for (; it != pts.end() && (*it)[0] <= x_hi; ++it) {
            if (pred(*it)) return true;
        }
        return false;
    }
};

void check_window_holds(const WindowedPointSet& s, const Box& region) {
    if (s.torus) throw InvalidArgument("entourages are defined for point sets in ℝⁿ only");
    if (!s.window.contains(region, kEntourageTol)) {
        throw WindowTooSmall("window does not contain the entourage region U");
    }
}

// S ∩ U ⊂ S′ + U′.
bool one_way(const WindowedPointSet& s, const WindowedPointSet& s2, const Entourage& e) {
    const int dim = s.dim;
    const Box ub = e.U.bounding_box();
    const Box upb = e.U_prime.bounding_box();
    const SlabIndex index(s2.points);
    for (const Point& p : s.points) {
        if (!ub.contains(p, kEntourageTol) || !e.U.contains(p, kEntourageTol)) continue;
        // p − q ∈ U′  ⇔  q ∈ p − U′.
        const double x_lo = p[0] - upb.hi[0] - kEntourageTol;
        const double x_hi = p[0] - upb.lo[0] + kEntourageTol;
        const bool found = index.any_in(x_lo, x_hi, [&](const Point& q) {
            Point d{};
            for (int k = 0; k < dim; ++k) d[idx(k)] = p[idx(k)] - q[idx(k)];
            return e.U_prime.contains(d, kEntourageTol);
        });
        if (found) continue;
        Box search = upb;
        for (int k = 0; k < dim; ++k) {
            search.lo[idx(k)] = p[idx(k)] - upb.hi[idx(k)];
            search.hi[idx(k)] = p[idx(k)] - upb.lo[idx(k)];
        }
        if (!s2.window.contains(search, kEntourageTol)) {
            throw WindowTooSmall("membership undecidable: partner search leaves the window");
        }
        return false;
    }
    return true;
}

std::size_t flag_count(const WindowedPointSet& s) {
    return static_cast<std::size_t>(std::count(s.flags.begin(), s.flags.end(), true));
}

DeloneReport check_delone_1d(const WindowedPointSet& s, double epsilon, double delta) {
    DeloneReport rep;
    std::vector<double> x;
    for (const Point& p : s.points) x.push_back(p[0]);
    std::sort(x.begin(), x.end());
    const double lo = s.window.lo[0];
    const double hi = s.window.hi[0];
    const double L = hi - lo;

    if (s.torus) {
        rep.margin = 0.0;
        if (x.empty()) {
            rep.covering_radius = std::numeric_limits<double>::infinity();
            rep.max_gap = std::numeric_limits<double>::infinity();
        } else {
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double next = i + 1 < x.size() ? x[i + 1] : x[0] + L;
                const double gap = next - x[i];
                if (x.size() > 1) rep.min_gap = std::min(rep.min_gap, gap);
                rep.max_gap = std::max(rep.max_gap, gap);
            }
            rep.covering_radius = 0.5 * rep.max_gap;
        }
    } else {
        rep.margin = epsilon;
        for (std::size_t i = 1; i < x.size(); ++i) rep.min_gap = std::min(rep.min_gap, x[i] - x[i - 1]);
        const double a = lo + epsilon;
        const double b = hi - epsilon;
        if (x.empty()) {
            rep.covering_radius = std::numeric_limits<double>::infinity();
            rep.max_gap = std::numeric_limits<double>::infinity();
        } else {
            auto dist_to_set = [&](double v) {
                auto it = std::lower_bound(x.begin(), x.end(), v);
                double d = std::numeric_limits<double>::infinity();
                if (it != x.end()) d = *it - v;
                if (it != x.begin()) d = std::min(d, v - *(it - 1));
                return d;
            };
            rep.covering_radius = std::max(dist_to_set(a), dist_to_set(b));
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double l = std::max(x[i - 1], a);
                const double r = std::min(x[i], b);
                if (l > r) continue;
                rep.max_gap = std::max(rep.max_gap, x[i] - x[i - 1]);
                const double mid = std::clamp(0.5 * (x[i - 1] + x[i]), l, r);
                rep.covering_radius = std::max(rep.covering_radius, std::min(mid - x[i - 1], x[i] - mid));
            }
        }
    }
    rep.separated_ok = rep.min_gap >= delta - 1e-9;
    rep.dense_ok = rep.covering_radius <= epsilon + 1e-9;
    return rep;
}

double nearest_distance(const PointGrid& grid, const Point& p, double start, double limit) {
    for (double r = start;; r *= 2.0) {
        if (auto d2 = grid.nearest2_within(p, r)) return std::sqrt(*d2);
        if (r > limit) return std::numeric_limits<double>::infinity();
    }
}

DeloneReport check_delone_nd(const WindowedPointSet& s, double epsilon, double delta) {
    DeloneReport rep;
    const int dim = s.dim;
    const std::optional<Point> torus = s.torus ? std::optional<Point>(sides_of(s.window)) : std::nullopt;
    double diag = 0.0;
    for (int k = 0; k < dim; ++k) diag += s.window.side(k) * s.window.side(k);
    diag = std::sqrt(diag);

    // Minimum pairwise distance: query growing radii until some pair is found.
    for (double r = std::max(2.0 * delta, 1e-6); s.points.size() > 1; r *= 2.0) {
        PointGrid grid(dim, r, torus);
        double best = std::numeric_limits<double>::infinity();
        for (const Point& p : s.points) {
            if (auto d2 = grid.nearest2_within(p, r)) best = std::min(best, std::sqrt(*d2));
            grid.insert(p);
        }
        if (std::isfinite(best) || r > 2.0 * diag) {
            rep.min_gap = best;
            break;
        }
    }

    PointGrid grid(dim, epsilon, torus);
    for (const Point& p : s.points) grid.insert(p);
    const Box region = s.torus ? s.window : s.window.inflated(-epsilon);
    rep.margin = s.torus ? 0.0 : epsilon;
    const double h = epsilon / 10.0;
    std::array<long long, 3> n{1, 1, 1};
    for (int k = 0; k < dim; ++k) {
        n[idx(k)] = static_cast<long long>(std::floor(region.side(k) / h + 1e-9)) + 1;
    }
    Point probe{};
    for (long long i = 0; i < n[0]; ++i) {
        for (long long j = 0; j < n[1]; ++j) {
            for (long long l = 0; l < n[2]; ++l) {
                const std::array<long long, 3> c{i, j, l};
                for (int k = 0; k < dim; ++k) {
                    probe[idx(k)] = std::min(region.lo[idx(k)] + h * static_cast<double>(c[idx(k)]),
                                             region.hi[idx(k)]);
                }
                const double d = nearest_distance(grid, probe, 1.5 * epsilon, 2.0 * diag);
                rep.covering_radius = std::max(rep.covering_radius, d);
                ++rep.probe_count;
            }
        }
    }
    rep.max_gap = 2.0 * rep.covering_radius;
    rep.separated_ok = rep.min_gap >= delta - 1e-9;
    rep.dense_ok = rep.covering_radius <= epsilon + 1e-9;
    return rep;
}

}  // namespace

// ---------------------------------------------------------------- shapes

Shape Shape::box(const Box& b) { return union_of({b}); }

Shape Shape::union_of(std::vector<Box> boxes) {
    if (boxes.empty()) throw InvalidArgument("shape needs at least one box");
    Shape s;
    s.kind = Kind::boxes;
    s.dim = boxes.front().dim;
    for (const Box& b : boxes) {
        if (b.dim != s.dim) throw InvalidArgument("boxes of a shape must share a dimension");
    }
    s.boxes = std::move(boxes);
    return s;
}

Shape Shape::ball(int dim, double r) {
    if (!(r > 0.0)) throw InvalidArgument("ball radius must be positive");
    Shape s;
    s.kind = Kind::ball;
    s.dim = dim;
    s.radius = r;
    return s;
}

bool Shape::contains(const Point& p, double tol) const {
    if (kind == Kind::ball) return std::sqrt(norm2(p, dim)) <= radius + tol;
    return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(p, tol); });
}

Box Shape::bounding_box() const {
    if (kind == Kind::ball) return Box::cube(dim, radius);
    Box out = boxes.front();
    for (const Box& b : boxes) {
        for (int k = 0; k < dim; ++k) {
            out.lo[idx(k)] = std::min(out.lo[idx(k)], b.lo[idx(k)]);
            out.hi[idx(k)] = std::max(out.hi[idx(k)], b.hi[idx(k)]);
        }
    }
    return out;
}

Entourage Entourage::from_r(int dim, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be positive");
    return {Shape::cube(dim, r), Shape::cube(dim, 1.0 / r)};
}

Box minkowski(const Box& a, const Box& b) {
    if (a.dim != b.dim) throw InvalidArgument("Minkowski sum of boxes of different dimension");
    Box out = a;
    for (int k = 0; k < a.dim; ++k) {
        out.lo[idx(k)] = a.lo[idx(k)] + b.lo[idx(k)];
        out.hi[idx(k)] = a.hi[idx(k)] + b.hi[idx(k)];
    }
    return out;
}

// ---------------------------------------------------------------- Delone

WindowedPointSet from_projected(const cp::ProjectedSet& ps) {
    WindowedPointSet s;
    s.dim = 1;
    s.window = Box::interval(ps.t_lo, ps.t_hi);
    for (double t : ps.coords) s.points.push_back({t, 0.0, 0.0});
    s.flags = ps.boundary_flags;
    return s;
}

DeloneReport check_delone(const WindowedPointSet& s, double epsilon, double delta) {
    if (!(epsilon > 0.0) || !(delta > 0.0)) throw InvalidArgument("epsilon and delta must be positive");
    if (s.window.dim != s.dim) throw InvalidArgument("window dimension differs from set dimension");
    if (!s.torus && !(s.window.min_side() > 2.0 * epsilon)) {
        throw WindowTooSmall("window side must exceed 2·epsilon");
    }
    DeloneReport rep = s.dim == 1 ? check_delone_1d(s, epsilon, delta) : check_delone_nd(s, epsilon, delta);
    rep.boundary_flag_count = flag_count(s);
    rep.point_count = s.points.size();
    return rep;
}

DeloneReport check_delone(const cp::ProjectedSet& ps, double epsilon, double delta) {
    return check_delone(from_projected(ps), epsilon, delta);
}

// ---------------------------------------------------------------- entourages

bool entourage_member(const WindowedPointSet& s, const WindowedPointSet& s2, const Entourage& e) {
    if (s.dim != s2.dim || e.U.dim != s.dim || e.U_prime.dim != s.dim) {
        throw InvalidArgument("dimension mismatch in entourage check");
    }
    const Box ub = e.U.bounding_box();
    check_window_holds(s, ub);
    check_window_holds(s2, ub);
    return one_way(s, s2, e) && one_way(s2, s, e);
}

double rubber_proximity(const WindowedPointSet& s, const WindowedPointSet& s2, double r_max) {
    if (!(r_max > 0.0)) throw InvalidArgument("r_max must be positive");
    if (entourage_member(s, s2, Entourage::from_r(s.dim, r_max))) return r_max;
    double lo = 0.0;
    double hi = r_max;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (mid > 0.0 && entourage_member(s, s2, Entourage::from_r(s.dim, mid))) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

std::vector<double> find_periods(const WindowedPointSet& s, const Entourage& e, double p_min,
                                 double p_max) {
    if (s.dim != 1) throw InvalidArgument("find_periods works on one-dimensional sets");
    if (!(p_min > 0.0) || !(p_max >= p_min)) throw InvalidArgument("need 0 < p_min <= p_max");
    const Box ub = e.U.bounding_box();
    check_window_holds(s, ub);

    std::vector<double> x;
    for (const Point& p : s.points) x.push_back(p[0]);
    std::sort(x.begin(), x.end());
    std::vector<double> diffs;
    for (double a : x) {
        if (!ub.contains(Point{a, 0.0, 0.0}, kEntourageTol)) continue;
        auto it = std::lower_bound(x.begin(), x.end(), a + p_min - 1e-9);
        for (; it != x.end() && *it <= a + p_max + 1e-9; ++it) {
            const double d = *it - a;
            if (d >= p_min - 1e-9 && d <= p_max + 1e-9) diffs.push_back(d);
        }
    }
    std::sort(diffs.begin(), diffs.end());

    std::vector<double> candidates;
    for (std::size_t i = 0; i < diffs.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < diffs.size() && diffs[j] - diffs[i] <= 1e-6) sum += diffs[j++];
        candidates.push_back(sum / static_cast<double>(j - i));
        i = j;
    }

    std::vector<double> periods;
    for (double p : candidates) {
        if (entourage_member(s, s.translated({-p, 0.0, 0.0}), e)) periods.push_back(p);
    }
    return periods;
}

// ---------------------------------------------------------------- composition

namespace {

Point half_widths(const Box& b) {
    Point h{};
    for (int k = 0; k < b.dim; ++k) {
        if (std::abs(b.lo[idx(k)] + b.hi[idx(k)]) > 1e-12) {
            throw InvalidArgument("composition boxes must be symmetric about the origin");
        }
        h[idx(k)] = b.hi[idx(k)];
    }
    return h;
}

bool premises(const Box& A, const Box& B, const Box& C, const Box& D, const WindowedPointSet& s1,
              const WindowedPointSet& s2, const WindowedPointSet& s3) {
    if (!entourage_member(s1, s2, {Shape::box(minkowski(A, B)), Shape::box(B)})) return false;
    return entourage_member(s2, s3, {Shape::box(minkowski(C, D)), Shape::box(D)});
}

}  // namespace

bool composition_check(const Box& A, const Box& B, const Box& C, const Box& D,
                       const WindowedPointSet& s1, const WindowedPointSet& s2,
                       const WindowedPointSet& s3) {
    const int dim = A.dim;
    const Point a = half_widths(A);
    const Point b = half_widths(B);
    const Point c = half_widths(C);
    const Point d = half_widths(D);
    Point u{};
    for (int k = 0; k < dim; ++k) {
        const auto i = idx(k);
        u[i] = std::min({a[i], c[i], c[i] + d[i] - b[i], a[i] + b[i] - d[i]});
        if (u[i] <= 0.0) return true;
    }
    if (!premises(A, B, C, D, s1, s2, s3)) return true;
    Point lo{};
    for (int k = 0; k < dim; ++k) lo[idx(k)] = -u[idx(k)];
    const Box U = Box::make(dim, lo, u);
    return entourage_member(s1, s3, {Shape::box(U), Shape::box(minkowski(B, D))});
}

bool composition_check_literal(const Box& A, const Box& B, const Box& C, const Box& D,
                               const WindowedPointSet& s1, const WindowedPointSet& s2,
                               const WindowedPointSet& s3) {
    const int dim = A.dim;
    Box U = A;
    for (int k = 0; k < dim; ++k) {
        U.lo[idx(k)] = std::max(A.lo[idx(k)], C.lo[idx(k)]);
        U.hi[idx(k)] = std::min(A.hi[idx(k)], C.hi[idx(k)]);
    }
    if (U.empty()) return true;
    if (!premises(A, B, C, D, s1, s2, s3)) return true;
    const Shape twice = Shape::union_of({minkowski(B, B), minkowski(B, C), minkowski(C, C)});
    return entourage_member(s1, s3, {Shape::box(U), twice});
}

}  // namespace delone::analysis
