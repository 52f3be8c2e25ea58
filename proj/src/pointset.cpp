#include "delone/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "delone/errors.hpp"

namespace delone {

namespace {

std::size_t idx(int k) { return static_cast<std::size_t>(k); }

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be 1, 2 or 3");
}

}  // namespace

// ---------------------------------------------------------------- Box

Box Box::make(int dim, const Point& lo, const Point& hi) {
    check_dim(dim);
    Box b;
    b.dim = dim;
    for (int k = 0; k < dim; ++k) {
        if (!std::isfinite(lo[idx(k)]) || !std::isfinite(hi[idx(k)]) || lo[idx(k)] > hi[idx(k)]) {
            throw InvalidArgument("box needs finite lo <= hi");
        }
        b.lo[idx(k)] = lo[idx(k)];
        b.hi[idx(k)] = hi[idx(k)];
    }
    return b;
}

Box Box::cube(int dim, double h) {
    check_dim(dim);
    Point lo{};
    Point hi{};
    for (int k = 0; k < dim; ++k) {
        lo[idx(k)] = -h;
        hi[idx(k)] = h;
    }
    return make(dim, lo, hi);
}

bool Box::contains(const Point& p, double tol) const {
    for (int k = 0; k < dim; ++k) {
        if (p[idx(k)] < lo[idx(k)] - tol || p[idx(k)] > hi[idx(k)] + tol) return false;
    }
    return true;
}

bool Box::contains(const Box& other, double tol) const {
    for (int k = 0; k < dim; ++k) {
        if (other.lo[idx(k)] < lo[idx(k)] - tol || other.hi[idx(k)] > hi[idx(k)] + tol) return false;
    }
    return true;
}

Box Box::inflated(double e) const {
    Box b = *this;
    for (int k = 0; k < dim; ++k) {
        b.lo[idx(k)] -= e;
        b.hi[idx(k)] += e;
    }
    return b;
}

Box Box::translated(const Point& v) const {
    Box b = *this;
    for (int k = 0; k < dim; ++k) {
        b.lo[idx(k)] += v[idx(k)];
        b.hi[idx(k)] += v[idx(k)];
    }
    return b;
}

bool Box::empty() const {
    for (int k = 0; k < dim; ++k) {
        if (lo[idx(k)] > hi[idx(k)]) return true;
    }
    return false;
}

double Box::min_side() const {
    double m = side(0);
    for (int k = 1; k < dim; ++k) m = std::min(m, side(k));
    return m;
}

double Box::distance2(const Point& p) const {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double d = std::max({lo[idx(k)] - p[idx(k)], 0.0, p[idx(k)] - hi[idx(k)]});
        s += d * d;
    }
    return s;
}

// ---------------------------------------------------------------- metric

double distance2(const Point& a, const Point& b, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double d = a[idx(k)] - b[idx(k)];
        s += d * d;
    }
    return s;
}

double distance(const Point& a, const Point& b, int dim) { return std::sqrt(distance2(a, b, dim)); }

double torus_distance(const Point& a, const Point& b, int dim, const Point& sides) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double L = sides[idx(k)];
        double d = std::fmod(std::abs(a[idx(k)] - b[idx(k)]), L);
        d = std::min(d, L - d);
        s += d * d;
    }
    return std::sqrt(s);
}

Point torus_canonical(const Point& p, int dim, const Point& sides) {
    Point out{};
    for (int k = 0; k < dim; ++k) {
        const double L = sides[idx(k)];
        double v = std::fmod(p[idx(k)] + 0.5 * L, L);
        if (v < 0.0) v += L;
        if (v >= L) v -= L;
        out[idx(k)] = v - 0.5 * L;
    }
    return out;
}

Box torus_window(int dim, double side) {
    if (!(side > 0.0)) throw InvalidArgument("torus side must be positive");
    return Box::cube(dim, 0.5 * side);
}

// ---------------------------------------------------------------- point sets

void WindowedPointSet::sort_points() {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    std::vector<Point> p2;
    std::vector<bool> f2;
    for (std::size_t i : order) {
        p2.push_back(points[i]);
        if (!flags.empty()) f2.push_back(flags[i]);
    }
    points = std::move(p2);
    flags = std::move(f2);
}

WindowedPointSet WindowedPointSet::translated(const Point& v) const {
    if (torus) throw InvalidArgument("translation of torus point sets is not supported");
    WindowedPointSet out = *this;
    for (Point& p : out.points) {
        for (int k = 0; k < dim; ++k) p[idx(k)] += v[idx(k)];
    }
    out.window = window.translated(v);
    return out;
}

std::vector<Point> WindowedPointSet::points_in(const Box& b, double tol) const {
    std::vector<Point> out;
    for (const Point& p : points) {
        if (b.contains(p, tol)) out.push_back(p);
    }
    return out;
}

void WindowedPointSet::validate() const {
    check_dim(dim);
    if (window.dim != dim) throw InvalidArgument("window dimension differs from set dimension");
    if (!flags.empty() && flags.size() != points.size()) {
        throw InvalidArgument("flags must be empty or parallel to points");
    }
    for (const Point& p : points) {
        for (int k = dim; k < kMaxDim; ++k) {
            if (p[idx(k)] != 0.0) throw InvalidArgument("unused coordinates must be zero");
        }
        if (!window.contains(p, 1e-9)) throw InvalidArgument("point lies outside the window");
    }
    if (delta && !(*delta > 0.0)) throw InvalidArgument("delta must be positive");
    if (epsilon && delta && *epsilon < *delta) throw ParamOrder("epsilon must be >= delta");
}

WindowedPointSet lattice_points(const Box& window, double spacing, const Point& offset) {
    if (!(spacing > 0.0)) throw InvalidArgument("spacing must be positive");
    WindowedPointSet out;
    out.dim = window.dim;
    out.window = window;
    std::array<long long, 3> lo{};
    std::array<long long, 3> hi{};
    for (int k = 0; k < kMaxDim; ++k) {
        if (k < window.dim) {
            lo[idx(k)] = static_cast<long long>(std::ceil((window.lo[idx(k)] - offset[idx(k)]) / spacing - 1e-12));
            hi[idx(k)] = static_cast<long long>(std::floor((window.hi[idx(k)] - offset[idx(k)]) / spacing + 1e-12));
        }
    }
    for (long long i = lo[0]; i <= hi[0]; ++i) {
        for (long long j = lo[1]; j <= hi[1]; ++j) {
            for (long long l = lo[2]; l <= hi[2]; ++l) {
                const std::array<long long, 3> n{i, j, l};
                Point p{};
                for (int k = 0; k < window.dim; ++k) {
                    p[idx(k)] = offset[idx(k)] + spacing * static_cast<double>(n[idx(k)]);
                }
                if (window.contains(p, 1e-12)) out.points.push_back(p);
            }
        }
    }
    out.sort_points();
    return out;
}

// ---------------------------------------------------------------- PointGrid

PointGrid::PointGrid(int dim, double cell, std::optional<Point> torus_sides)
    : dim_(dim), torus_(torus_sides) {
    check_dim(dim);
    if (!(cell > 0.0)) throw InvalidArgument("grid cell must be positive");
    for (int k = 0; k < kMaxDim; ++k) {
        cell_[idx(k)] = cell;
        if (torus_ && k < dim) {
            const double L = (*torus_)[idx(k)];
            const auto n = std::max(1LL, static_cast<long long>(std::floor(L / cell)));
            wrap_cells_[idx(k)] = n;
            cell_[idx(k)] = L / static_cast<double>(n);
        }
    }
}

std::size_t PointGrid::KeyHash::operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
}

PointGrid::Key PointGrid::key_of(const Point& p) const {
    Key key{};
    for (int k = 0; k < dim_; ++k) {
        long long c = static_cast<long long>(std::floor(p[idx(k)] / cell_[idx(k)]));
        if (torus_) {
            const long long n = wrap_cells_[idx(k)];
            c = ((c % n) + n) % n;
        }
        key[idx(k)] = c;
    }
    return key;
}

double PointGrid::dist2(const Point& a, const Point& b) const {
    if (!torus_) return distance2(a, b, dim_);
    const double d = torus_distance(a, b, dim_, *torus_);
    return d * d;
}

void PointGrid::insert(const Point& p) {
    cells_[key_of(p)].push_back(p);
    ++count_;
}

template <class F>
void PointGrid::visit_near(const Point& p, double radius, F&& f) const {
    const Key centre = key_of(p);
    std::array<long long, 3> reach{};
    for (int k = 0; k < dim_; ++k) {
        reach[idx(k)] = static_cast<long long>(std::ceil(radius / cell_[idx(k)]));
        if (torus_) reach[idx(k)] = std::min(reach[idx(k)], wrap_cells_[idx(k)] / 2 + 1);
    }
    const double r2 = radius * radius;
    std::set<Key> visited;
    Key key{};
    for (long long i = -reach[0]; i <= reach[0]; ++i) {
        for (long long j = -reach[1]; j <= reach[1]; ++j) {
            for (long long l = -reach[2]; l <= reach[2]; ++l) {
                const std::array<long long, 3> off{i, j, l};
                for (int k = 0; k < kMaxDim; ++k) {
                    key[idx(k)] = centre[idx(k)] + off[idx(k)];
                    if (torus_ && k < dim_) {
                        const long long n = wrap_cells_[idx(k)];
                        key[idx(k)] = ((key[idx(k)] % n) + n) % n;
                    }
                }
                if (torus_ && !visited.insert(key).second) continue;
                auto it = cells_.find(key);
                if (it == cells_.end()) continue;
                for (const Point& q : it->second) {
                    const double d2 = dist2(p, q);
                    if (d2 <= r2) f(q, d2);
                }
            }
        }
    }
}

std::optional<double> PointGrid::nearest2_within(const Point& p, double radius) const {
    std::optional<double> best;
    visit_near(p, radius, [&](const Point&, double d2) {
        if (!best || d2 < *best) best = d2;
    });
    return best;
}

std::vector<Point> PointGrid::points_within(const Point& p, double radius) const {
    std::vector<Point> out;
    visit_near(p, radius, [&](const Point& q, double) { out.push_back(q); });
    return out;
}

}  // namespace delone
