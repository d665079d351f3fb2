#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "projconn/geometry.hpp"

namespace projconn {

struct GeodesicState {
    double t = 0.0;
    double x = 0.0, y = 0.0;
    double xd = 0.0, yd = 0.0;
};

struct QuotientState {
    double x = 0.0;
    double y = 0.0, yx = 0.0;
};

// Embedded Dormand-Prince 5(4) with PI step-size control.  Returned paths
// hold the accepted steps (monitors see solver states, never interpolants);
// resample() fills a uniform grid with cubic Hermite segments when evenly
// spaced records are wanted.
struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 0.05;  // keeps Hermite read-off error far below the drift gates
    long max_steps = 1000000;
};

std::vector<GeodesicState> integrate_geodesic(const Metric2& g, const GeodesicState& s0,
                                              double t1, const OdeOptions& opts = {});
std::vector<QuotientState> integrate_quotient(const ProjConn& pc, const QuotientState& q0,
                                              double x1, const OdeOptions& opts = {});

std::vector<GeodesicState> resample(const Metric2& g, const std::vector<GeodesicState>& path,
                                    int n);
std::vector<QuotientState> resample(const ProjConn& pc, const std::vector<QuotientState>& path,
                                    int n);

// Hermite read-off of y at an abscissa inside the covered x-range.
double quotient_y_at(const std::vector<QuotientState>& path, double x);

struct IntegralMonitor {
    std::string name;
    std::function<double(const GeodesicState&)> on_geodesic;
    std::function<double(const QuotientState&)> on_quotient;
    bool capture_reference = true;  // reference taken from the first record
    double reference = 0.0;
};

struct DriftReport {
    std::string name;
    double reference = 0.0;
    double max_abs = 0.0;
    double max_rel = 0.0;  // |value - reference| / max(|reference|, floor)
};

std::vector<DriftReport> monitor(const std::vector<GeodesicState>& path,
                                 std::vector<IntegralMonitor> monitors);
std::vector<DriftReport> monitor(const std::vector<QuotientState>& path,
                                 std::vector<IntegralMonitor> monitors);

IntegralMonitor energy_monitor(const Metric2& g);  // g(gamma', gamma')
// K(gamma', gamma') for a Killing tensor K (lower indices)
IntegralMonitor killing_monitor(const std::string& name, const QuadraticForm2& K);
// K(gamma', gamma') / g(gamma', gamma'); rejects null initial velocity.
// On quotient records evaluates with gamma' = (1, yx).
IntegralMonitor rational_monitor(const std::string& name, const QuadraticForm2& K,
                                 const Metric2& g);

// ---- superintegrable family, written with the role of x and y exchanged
// ---- so the quotient ODE is solved for y(x): metric (x^2 + y) dx dy

Metric2 superintegrable_metric();
ProjConn superintegrable_pc();

// rational quotient integrals; both require yx != 0
double supint_I1(const QuotientState& q);
double supint_I2(const QuotientState& q);

struct TrajectoryConstants {
    double c1 = 0.0;  // level of the first quotient integral
    double c2 = 0.0;  // level of the second
    double k = 1.0;   // Hamiltonian level of the parametrized run
};

enum class Branch { Plus, Minus };

// Root of 9 y^2 + B(x) y + C(x) = 0 on the selected sheet; the root is
// checked against the slope ODE y_x = (x^2 + y)/(2x - c1) by implicit
// differentiation away from double roots.
double trajectory_solve(const TrajectoryConstants& c, double x, Branch branch);
// sheet chosen by continuity with a previous sample
double trajectory_solve_near(const TrajectoryConstants& c, double x, double y_prev);

struct ReparamState {
    double t = 0.0;
    double x = 0.0, y = 0.0;
};

// Integrates xdot = dir * sqrt(k (2x - c1)) / (x^2 + y) with y read off the
// algebraic curve by continuation; returns a uniform grid of samples+1
// records.  Sign flips at turning points are capped at 16 per run.
std::vector<ReparamState> reparametrize(const TrajectoryConstants& c, double x0, double y0,
                                        double t1, int dir = +1, int samples = 400,
                                        const OdeOptions& opts = {});

// Rank of the 4x3 Jacobian of (H, I, J) in (x, y, px, py), where H is the
// Hamiltonian of the metric of sig[0] and I, J are the quadratic integrals
// built from sig[1], sig[2]; singular values below 1e-8 of the largest
// count as zero.
int independence_rank(const std::array<SigmaField, 3>& sig, const Vec2& p, const Vec2& momenta);

}  // namespace projconn
