#include "nbarrier/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "nbarrier/errors.hpp"
#include "nbarrier/format.hpp"

namespace nbarrier {

namespace {

PlotPath line_path(const std::string& role, const std::string& color, Point a, Point b) {
    PlotPath path;
    path.role = role;
    path.color = color;
    path.pieces = {{a, b}};
    return path;
}

// Sample the quadratic curve F(u, v) = 0 column by column: for fixed u the
// equation is quadratic in v, giving at most two branch points. Points
// outside [0, extent] split a branch into separate pieces.
PlotPath conic_path(const ScaledParams& p, const Weights& w, double extent) {
    PlotPath path;
    path.role = "conic";
    path.color = "green";

    const double a = w.alpha, b = w.beta, k = p.k;
    const double S = a * p.a1 + b * k * p.a2;
    const int samples = 512;

    std::vector<Point> lo_piece, hi_piece;
    auto flush = [&path](std::vector<Point>& piece) {
        if (piece.size() >= 2) path.pieces.push_back(piece);
        piece.clear();
    };
    for (int i = 0; i <= samples; ++i) {
        const double u = extent * static_cast<double>(i) / samples;
        // b k v^2 + (S u - b k) v + a u (u - 1) = 0
        const double bq = S * u - b * k;
        const double disc = bq * bq - 4.0 * b * k * a * u * (u - 1.0);
        if (disc < 0.0) {
            flush(lo_piece);
            flush(hi_piece);
            continue;
        }
        const double sq = std::sqrt(disc);
        const double v_lo = (-bq - sq) / (2.0 * b * k);
        const double v_hi = (-bq + sq) / (2.0 * b * k);
        const double tol = 1e-12 * std::max(1.0, extent);
        if (v_lo >= -tol && v_lo <= extent) {
            lo_piece.push_back({u, std::max(v_lo, 0.0)});
        } else {
            flush(lo_piece);
        }
        if (v_hi >= -tol && v_hi <= extent) {
            hi_piece.push_back({u, std::max(v_hi, 0.0)});
        } else {
            flush(hi_piece);
        }
    }
    flush(lo_piece);
    flush(hi_piece);
    return path;
}

} // namespace

PlotGeometry build_plot(const ScaledParams& p, const Weights& w, const Barrier* barrier,
                        const TangentSolution* tangent,
                        const std::vector<Point>* trajectory) {
    p.validate();
    w.validate();
    if (barrier && tangent) {
        throw InconsistentInputs("plot takes a barrier or a tangent construction, not both");
    }

    PlotGeometry g;

    // Axes must contain the unit intercepts, every construction line and the
    // trajectory.
    double extent = 1.1;
    auto grow = [&extent](double value) { extent = std::max(extent, 1.05 * value); };
    grow(1.0 / p.a1);
    grow(1.0 / p.a2);
    const double a = w.alpha, b = w.beta;
    auto grow_q = [&](double lambda) {
        grow(lambda / a);
        grow(lambda / (p.d * b));
    };
    if (barrier) {
        grow_q(barrier->lambda1);
        grow_q(barrier->lambda2);
        grow(barrier->eta / a);
        grow(barrier->eta / b);
    }
    if (tangent) {
        grow_q(tangent->lambda1);
        grow_q(tangent->lambda2);
        grow(tangent->eta / a);
        grow(tangent->eta / b);
    }
    if (trajectory) {
        for (const Point& pt : *trajectory) {
            grow(pt[0]);
            grow(pt[1]);
        }
    }
    g.extent = extent;

    g.paths.push_back(line_path("nullcline_u", "red", {1.0, 0.0}, {0.0, 1.0 / p.a1}));
    g.paths.push_back(line_path("nullcline_v", "blue", {1.0 / p.a2, 0.0}, {0.0, 1.0}));
    g.paths.push_back(conic_path(p, w, extent));

    auto add_trio = [&](double lambda1, double lambda2, double eta) {
        auto q_seg = [&](double lambda) {
            return std::pair<Point, Point>{{lambda / a, 0.0}, {0.0, lambda / (p.d * b)}};
        };
        const auto s1 = q_seg(lambda1);
        const auto s2 = q_seg(lambda2);
        g.paths.push_back(line_path("q_lambda1", "magenta", s1.first, s1.second));
        g.paths.push_back(line_path("q_lambda2", "magenta", s2.first, s2.second));
        g.paths.push_back(line_path("p_eta", "yellow", {eta / a, 0.0}, {0.0, eta / b}));
    };
    if (barrier) {
        add_trio(barrier->lambda1, barrier->lambda2, barrier->eta);
    }
    if (tangent) {
        add_trio(tangent->lambda1, tangent->lambda2, tangent->eta);
        g.markers.push_back({{tangent->u_t, tangent->v_t}, "tangency", "green"});
    }

    if (trajectory && !trajectory->empty()) {
        PlotPath traj;
        traj.role = "trajectory";
        traj.color = "black";
        traj.dashed = true;
        // Thin long profiles down to a drawable polyline.
        const size_t stride = std::max<size_t>(1, trajectory->size() / 1000);
        std::vector<Point> piece;
        for (size_t i = 0; i < trajectory->size(); i += stride) {
            piece.push_back((*trajectory)[i]);
        }
        if (piece.back() != trajectory->back()) piece.push_back(trajectory->back());
        traj.pieces.push_back(std::move(piece));
        g.paths.push_back(std::move(traj));
    }
    return g;
}

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 50.0;

std::string px(double z) {
    // Pixel coordinates rounded to 0.01 so the SVG stays compact while
    // remaining deterministic.
    return format_double(std::round(z * 100.0) / 100.0);
}

struct Mapper {
    double extent;
    double sx(double u) const { return kMargin + u / extent * (kCanvas - 2.0 * kMargin); }
    double sy(double v) const {
        return kCanvas - kMargin - v / extent * (kCanvas - 2.0 * kMargin);
    }
};

} // namespace

std::string render_svg(const PlotGeometry& g) {
    const Mapper m{g.extent};
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";

    // Axes frame with the extent annotated.
    svg += "<rect x=\"" + px(m.sx(0.0)) + "\" y=\"" + px(m.sy(g.extent)) + "\" width=\"" +
           px(m.sx(g.extent) - m.sx(0.0)) + "\" height=\"" + px(m.sy(0.0) - m.sy(g.extent)) +
           "\" fill=\"none\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + px(m.sx(g.extent) - 12.0) + "\" y=\"" + px(m.sy(0.0) + 20.0) +
           "\" font-size=\"12\">u</text>\n";
    svg += "<text x=\"" + px(m.sx(0.0) - 20.0) + "\" y=\"" + px(m.sy(g.extent) + 12.0) +
           "\" font-size=\"12\">v</text>\n";
    svg += "<text x=\"" + px(m.sx(0.0) - 8.0) + "\" y=\"" + px(m.sy(0.0) + 20.0) +
           "\" font-size=\"12\">0</text>\n";
    svg += "<text x=\"" + px(m.sx(g.extent) - 8.0) + "\" y=\"" + px(m.sy(0.0) + 34.0) +
           "\" font-size=\"12\">" + format_double(g.extent) + "</text>\n";

    for (const PlotPath& path : g.paths) {
        const bool straight = path.role != "conic" && path.role != "trajectory";
        const std::string dash = path.dashed ? " stroke-dasharray=\"6 4\"" : "";
        if (straight) {
            const auto& piece = path.pieces.front();
            svg += "<line x1=\"" + px(m.sx(piece[0][0])) + "\" y1=\"" + px(m.sy(piece[0][1])) +
                   "\" x2=\"" + px(m.sx(piece[1][0])) + "\" y2=\"" + px(m.sy(piece[1][1])) +
                   "\" stroke=\"" + path.color + "\" stroke-width=\"2\"" + dash +
                   " data-role=\"" + path.role + "\"/>\n";
            continue;
        }
        std::string d;
        for (const auto& piece : path.pieces) {
            for (size_t i = 0; i < piece.size(); ++i) {
                d += (i == 0 ? "M" : "L");
                d += px(m.sx(piece[i][0])) + " " + px(m.sy(piece[i][1]));
            }
        }
        svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + path.color +
               "\" stroke-width=\"2\"" + dash + " data-role=\"" + path.role + "\"/>\n";
    }

    for (const PlotMarker& marker : g.markers) {
        svg += "<circle cx=\"" + px(m.sx(marker.at[0])) + "\" cy=\"" + px(m.sy(marker.at[1])) +
               "\" r=\"4\" fill=\"" + marker.color +
               "\" stroke=\"black\" stroke-width=\"1\" data-role=\"" + marker.role + "\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace nbarrier
