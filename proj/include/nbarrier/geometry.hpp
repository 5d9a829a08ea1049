#pragma once

#include <string>
#include <vector>

#include "nbarrier/barrier.hpp"
#include "nbarrier/model.hpp"
#include "nbarrier/tangent.hpp"

namespace nbarrier {

/// One role-tagged drawable in phase-plane (data) coordinates. Straight
/// roles carry exactly one two-point piece and render as SVG lines; curved
/// roles (conic, trajectory) may have several polyline pieces and render as
/// a single SVG path.
struct PlotPath {
    std::string role;  ///< nullcline_u, nullcline_v, conic, q_lambda1, q_lambda2,
                       ///< p_eta, tangent_line, trajectory
    std::string color; ///< red, blue, green, magenta, yellow, black
    bool dashed = false;
    std::vector<std::vector<Point>> pieces;
};

struct PlotMarker {
    Point at;
    std::string role;
    std::string color;
};

/// Phase-plane figure: red/blue nullclines, green curve F = 0, magenta
/// q-lines, yellow p-line, optional dashed trajectory, axes over
/// [0, extent]^2 with extent = max(1.1, data).
struct PlotGeometry {
    double extent = 1.1;
    std::vector<PlotPath> paths;
    std::vector<PlotMarker> markers;
};

/// Assemble the figure. Exactly one of `barrier` / `tangent` supplies the
/// three construction lines (tangent adds the tangency marker); both may be
/// null for a nullclines-plus-conic plot. `trajectory` (u(x), v(x)) draws as
/// a dashed curve.
PlotGeometry build_plot(const ScaledParams& p, const Weights& w, const Barrier* barrier,
                        const TangentSolution* tangent,
                        const std::vector<Point>* trajectory);

/// Deterministic standalone SVG document for the figure.
std::string render_svg(const PlotGeometry& g);

} // namespace nbarrier
