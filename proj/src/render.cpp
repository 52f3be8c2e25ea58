#include "delone/render.hpp"

#include <cmath>
#include <fmt/format.h>

#include "delone/errors.hpp"

namespace delone::render {

namespace {

struct Screen {
    double cx;
    double cy;
    double scale;
    std::pair<double, double> operator()(hyp::HPoint z) const {
        const hyp::DiskPoint w = hyp::to_disk(z);
        return {cx + scale * w.u, cy - scale * w.v};
    }
};

std::string header(int w, int h) {
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        w, h);
}

// Point at Fermi coordinates (t, s) about ell.
hyp::HPoint at_offset(const hyp::Geodesic& ell, double t, double s) {
    const double e = std::exp(t);
    return ell.frame().inverse().apply(hyp::HPoint{-e * std::tanh(s), e / std::cosh(s)});
}

}  // namespace

std::string arc_path(hyp::HPoint p, hyp::HPoint q, double cx, double cy, double scale) {
    const Screen sc{cx, cy, scale};
    const auto [px, py] = sc(p);
    const auto [qx, qy] = sc(q);
    const hyp::Geodesic g = hyp::Geodesic::through(p, q);
    const auto [mx, my] = sc(g.at(0.5 * hyp::dist(p, q)));
    // Radius of the circle through the three screen points.
    const double ax = mx - px, ay = my - py, bx = qx - mx, by = qy - my;
    const double cross = ax * by - ay * bx;
    const double chord = std::hypot(qx - px, qy - py);
    if (std::abs(cross) <= 1e-9 * chord * chord) {
        return fmt::format("<path d=\"M {:.4f} {:.4f} L {:.4f} {:.4f}\"", px, py, qx, qy);
    }
    const double radius = std::hypot(ax, ay) * std::hypot(bx, by) * chord / (2.0 * std::abs(cross));
    return fmt::format("<path d=\"M {:.4f} {:.4f} A {:.4f} {:.4f} 0 0 {} {:.4f} {:.4f}\"", px, py, radius,
                       radius, cross > 0.0 ? 1 : 0, qx, qy);
}

std::string disk_svg(const DiskScene& scene, int size) {
    const double c = 0.5 * size;
    const double scale = 0.47 * size;
    const Screen sc{c, c, scale};
    std::string out = header(size, size);
    out += fmt::format("<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\" fill=\"none\" stroke=\"black\"/>\n", c, c,
                       scale);
    if (scene.ell && scene.rho > 0.0) {
        std::string pts;
        const int n = 200;
        for (int side : {1, -1}) {
            for (int k = 0; k <= n; ++k) {
                const double u = -scene.extent + 2.0 * scene.extent * k / n;
                const double t = side > 0 ? u : -u;
                const auto [x, y] = sc(at_offset(*scene.ell, t, side * scene.rho));
                pts += fmt::format("{:.4f},{:.4f} ", x, y);
            }
        }
        out += fmt::format("<polygon points=\"{}\" fill=\"#4a7bd0\" fill-opacity=\"0.35\" stroke=\"none\"/>\n", pts);
    }
    for (std::size_t j = 0; j < scene.polygon.size(); ++j) {
        out += arc_path(scene.polygon[j], scene.polygon[(j + 1) % scene.polygon.size()], c, c, scale);
        out += " fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    }
    if (scene.ell) {
        std::string pts;
        const int n = 200;
        for (int k = 0; k <= n; ++k) {
            const auto [x, y] = sc(scene.ell->at(-scene.extent + 2.0 * scene.extent * k / n));
            pts += fmt::format("{:.4f},{:.4f} ", x, y);
        }
        out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"black\"/>\n", pts);
        for (double t : scene.projected) {
            const auto [x, y] = sc(scene.ell->at(t));
            out += fmt::format("<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"1.5\" fill=\"black\"/>\n", x, y);
        }
    }
    for (const hyp::HPoint& z : scene.orbit_points) {
        const auto [x, y] = sc(z);
        const double w = hyp::to_disk(z).u * hyp::to_disk(z).u + hyp::to_disk(z).v * hyp::to_disk(z).v;
        const double r = std::max(0.4, 3.0 * (1.0 - w));
        out += fmt::format("<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\" fill=\"#d02020\"/>\n", x, y, r);
    }
    out += "</svg>\n";
    return out;
}

std::string line_svg(const WindowedPointSet& s, int width) {
    if (s.dim != 1) throw InvalidArgument("tick plots need a one-dimensional set");
    const int height = 80;
    const double margin = 20.0;
    const double lo = s.window.lo[0];
    const double hi = s.window.hi[0];
    const double span = hi > lo ? hi - lo : 1.0;
    auto xpos = [&](double t) { return margin + (width - 2.0 * margin) * (t - lo) / span; };
    std::string out = header(width, height);
    out += fmt::format("<line x1=\"{:.4f}\" y1=\"40\" x2=\"{:.4f}\" y2=\"40\" stroke=\"black\"/>\n", xpos(lo),
                       xpos(hi));
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const bool flagged = i < s.flags.size() && s.flags[i];
        const double x = xpos(s.points[i][0]);
        out += fmt::format("<line x1=\"{:.4f}\" y1=\"30\" x2=\"{:.4f}\" y2=\"50\" stroke=\"{}\"/>\n", x, x,
                           flagged ? "#d02020" : "black");
    }
    out += fmt::format("<text x=\"{:.1f}\" y=\"70\" font-size=\"11\">{:g}</text>\n", margin, lo);
    out += fmt::format("<text x=\"{:.1f}\" y=\"70\" font-size=\"11\" text-anchor=\"end\">{:g}</text>\n",
                       width - margin, hi);
    out += "</svg>\n";
    return out;
}

}  // namespace delone::render
