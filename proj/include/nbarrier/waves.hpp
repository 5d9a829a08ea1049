#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbarrier/barrier.hpp"
#include "nbarrier/model.hpp"

namespace nbarrier {

/// Provenance of a computed profile.
struct SolverMeta {
    std::string method; ///< "newton" or "march"
    double residual;    ///< max-norm finite-difference residual of the profile
    int iterations;     ///< Newton iterations or time steps taken
    double eps_bc;      ///< endpoint proximity tolerance recorded for reports
};

/// A discretized traveling-wave frame (u(x), v(x), theta) on a uniform grid
/// over [-L, L], with u(-L), v(-L) near (1, 0) and u(L), v(L) near (0, 1).
struct WaveProfile {
    std::vector<double> grid;
    std::vector<double> u;
    std::vector<double> v;
    double theta = 0.0;
    SolverMeta meta;
};

/// Configuration shared by the Newton solver and the marching oracle.
struct SolverConfig {
    double L = 50.0;           ///< half-domain length
    int N = 1024;              ///< grid intervals; even, >= 64
    double tol = 1e-10;        ///< Newton residual tolerance (max norm)
    int max_iter = 40;
    double phase_anchor = 0.5; ///< value pinned at x = 0: u(0) = phase_anchor
    double theta0 = 0.0;       ///< initial speed guess
    double eps_bc = 1e-6;      ///< truncation tolerance recorded in meta

    /// Optional explicit continuation path: each entry is solved in turn,
    /// the previous solution seeding the next, before the target parameters.
    std::vector<ScaledParams> continuation;

    /// When set, the tanh initial guess is perturbed by uniform noise in
    /// [-1e-3, 1e-3] drawn from this seed. Default: no jitter.
    std::optional<std::uint64_t> jitter_seed;

    void validate() const;
};

/// Solve the traveling-wave two-point problem
///
///   u'' + theta u' + u (1 - u - a1 v) = 0
///   d v'' + theta v' + k v (1 - a2 u - v) = 0
///   (u, v)(-L) = (1, 0),  (u, v)(L) = (0, 1),  u(0) = phase_anchor
///
/// by damped Newton on second-order central differences, with theta as an
/// extra unknown closed by the phase condition. Falls back to parameter
/// continuation from an easy symmetric set when plain Newton stalls.
/// Throws NotBistable, NoConvergence, NonPositiveSolution.
WaveProfile solve_wave(const ScaledParams& p, const SolverConfig& cfg);

/// Independent oracle: integrate the parabolic system by method of lines
/// (central differences, explicit stepping with automatic step halving)
/// from a step initial condition, tracking the u = 1/2 level set. The
/// speed is the least-squares slope of the level-set position over the
/// final 20% of the horizon; the returned frame is recentered so that
/// u(0) = 1/2. `initial` (when given) replaces the step initial condition
/// and must share the configured grid.
/// Throws CFLViolation, NotTraveling.
WaveProfile march_oracle(const ScaledParams& p, const SolverConfig& cfg, double t_end,
                         const WaveProfile* initial = nullptr);

/// Max-norm of the second-order finite-difference residual of the wave
/// system at interior nodes, using the profile's own theta.
double residual(const WaveProfile& profile, const ScaledParams& p);

/// One pointwise bound evaluated along a profile.
struct BoundCheck {
    std::string name; ///< "coarse_lower", "coarse_upper", "tangent_lower"
    bool is_lower;
    double bound;
    double observed; ///< min q for lower bounds, max q for upper bounds
    double margin;   ///< observed - bound for lower, bound - observed for upper
    bool pass;       ///< margin >= -slack
};

/// Result of checking every applicable bound along a computed profile.
struct VerificationReport {
    std::string quantity; ///< the bounded combination, "alpha*u + d*beta*v"
    double min_q = 0.0;
    double max_q = 0.0;
    double slack = 0.0;   ///< discretization slack applied to each check
    double h = 0.0;       ///< grid spacing

    bool bc_ok = false;   ///< endpoint states within eps_bc of (1,0)/(0,1)
    double bc_error = 0.0;

    bool tangent_applicable = false; ///< d inside the admissibility window

    std::vector<BoundCheck> checks;
    bool all_pass = false; ///< bc_ok and every check passed
    std::string note;
};

/// Evaluate q = alpha u + d beta v along the profile and compare against
/// the coarse two-sided bound and, when the window condition holds, the
/// tangent lower bound. Bound violations are report entries, never
/// exceptions. A profile that fails the endpoint check is flagged and its
/// bound checks are skipped (the bounds only apply to connecting waves).
/// slack = 0 selects the automatic policy max(1e-6, residual).
VerificationReport bound_verify(const WaveProfile& profile, const ScaledParams& p,
                                const Weights& w, double slack = 0.0);

/// Transport a raw-system profile to scaled variables and back.
WaveProfile to_scaled(const WaveProfile& profile, const ScaleMap& map);
WaveProfile to_unscaled(const WaveProfile& profile, const ScaleMap& map);

} // namespace nbarrier
