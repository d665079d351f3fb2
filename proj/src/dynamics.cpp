#include "projconn/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "projconn/util.hpp"

namespace projconn {

namespace {

// Dormand-Prince 5(4) tableau; E* is the difference between the fifth- and
// fourth-order weights.
const double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;
const double A21 = 1.0 / 5.0;
const double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
const double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
const double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0,
             A54 = -212.0 / 729.0;
const double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
             A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
const double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0, B5 = -2187.0 / 6784.0,
             B6 = 11.0 / 84.0;
const double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
             E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

template <int N>
using Arr = std::array<double, N>;

template <int N>
Arr<N> hermite(double s, double h, const Arr<N>& y0, const Arr<N>& f0, const Arr<N>& y1,
               const Arr<N>& f1) {
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2.0 * s3 - 3.0 * s2 + 1.0, h10 = s3 - 2.0 * s2 + s;
    double h01 = -2.0 * s3 + 3.0 * s2, h11 = s3 - s2;
    Arr<N> r;
    for (int i = 0; i < N; ++i) {
        r[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    }
    return r;
}

// Adaptive driver.  sink(t, y) receives every accepted record including the
// initial one, so callers that tolerate a truncated run keep the partial
// path when LeftChart is thrown.
template <int N, class F, class OK, class Sink>
void dopri(F f, OK ok, double t0, Arr<N> y, double t1, const OdeOptions& o,
           const std::string& what, Sink sink) {
    sink(t0, y);
    if (t1 == t0) {
        return;
    }
    double dir = t1 > t0 ? 1.0 : -1.0;
    if (!ok(t0, y)) {
        throw Error(what + ": initial state outside the chart");
    }
    Arr<N> k1 = f(t0, y);  // failures at the initial state propagate as-is
    double t = t0;
    double h = std::min({o.initial_step, o.max_step, std::abs(t1 - t0)}) * dir;
    double facold = 1e-4;
    long steps = 0;
    for (;;) {
        if (++steps > o.max_steps) {
            throw Error(what + ": step limit exceeded");
        }
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
            throw StepUnderflow(what + ": step size underflow at " + std::to_string(t));
        }
        bool last = false;
        if ((t + h - t1) * dir >= 0.0) {
            h = t1 - t;
            last = true;
        }
        Arr<N> k2, k3, k4, k5, k6, k7, ynew;
        bool fail = false;
        try {
            Arr<N> w;
            for (int i = 0; i < N; ++i) w[i] = y[i] + h * A21 * k1[i];
            k2 = f(t + C2 * h, w);
            for (int i = 0; i < N; ++i) w[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
            k3 = f(t + C3 * h, w);
            for (int i = 0; i < N; ++i)
                w[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
            k4 = f(t + C4 * h, w);
            for (int i = 0; i < N; ++i)
                w[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
            k5 = f(t + C5 * h, w);
            for (int i = 0; i < N; ++i)
                w[i] = y[i] +
                       h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
            k6 = f(t + h, w);
            for (int i = 0; i < N; ++i)
                ynew[i] = y[i] +
                          h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
            k7 = f(t + h, ynew);
        } catch (const Error&) {
            fail = true;  // a stage left the model's domain; retry shorter
        }
        double err = 2.0;
        if (!fail) {
            double acc = 0.0;
            bool finite = true;
            for (int i = 0; i < N; ++i) {
                double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                                E7 * k7[i]);
                double sc = o.abs_tol + o.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                acc += (e / sc) * (e / sc);
                finite = finite && std::isfinite(ynew[i]);
            }
            err = finite ? std::sqrt(acc / N) : 2.0;
        }
        if (fail || err > 1.0) {
            h *= std::max(0.1, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
            continue;
        }
        bool mid_ok = ok(t + 0.5 * h, hermite<N>(0.5, h, y, k1, ynew, k7));
        bool end_ok = ok(t + h, ynew);
        if (!mid_ok || !end_ok) {
            // bisect along the interpolant for the last in-chart point
            double lo = 0.0, hi = mid_ok ? 1.0 : 0.5;
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (lo + hi);
                (ok(t + m * h, hermite<N>(m, h, y, k1, ynew, k7)) ? lo : hi) = m;
            }
            Arr<N> yb = hermite<N>(lo, h, y, k1, ynew, k7);
            if (lo > 1e-9) {
                sink(t + lo * h, yb);
            }
            throw LeftChart(what + ": left the chart at " + std::to_string(t + lo * h),
                            t + lo * h, std::vector<double>(yb.begin(), yb.end()));
        }
        t += h;
        y = ynew;
        k1 = k7;
        sink(t, y);
        if (last) {
            return;
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-12), -0.14) * std::pow(facold, 0.08);
        facold = std::max(err, 1e-4);
        h = dir * std::min(std::abs(h) * std::clamp(fac, 0.2, 5.0), o.max_step);
    }
}

std::array<double, 4> pc_values(const ProjConn& pc, double x, double y) {
    if (pc.values) {
        return pc.values(x, y);
    }
    return {eval_value(pc.f[0], x, y), eval_value(pc.f[1], x, y), eval_value(pc.f[2], x, y),
            eval_value(pc.f[3], x, y)};
}

Arr<4> geodesic_rhs(const Metric2& g, const Arr<4>& s) {
    Christoffel2 c = christoffel(g, s[0], s[1]);
    double vx = s[2], vy = s[3];
    double ax = -(c.G[0][0][0] * vx * vx + 2.0 * c.G[0][0][1] * vx * vy + c.G[0][1][1] * vy * vy);
    double ay = -(c.G[1][0][0] * vx * vx + 2.0 * c.G[1][0][1] * vx * vy + c.G[1][1][1] * vy * vy);
    return {vx, vy, ax, ay};
}

Arr<2> quotient_rhs(const ProjConn& pc, double x, const Arr<2>& s) {
    auto f = pc_values(pc, x, s[0]);
    double yx = s[1];
    return {yx, f[0] + yx * (f[1] + yx * (f[2] + yx * f[3]))};
}

bool state_ok(const Chart& chart, const std::function<bool(double, double)>& singular, double x,
              double y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !chart.contains(x, y)) {
        return false;
    }
    return !(singular && singular(x, y));
}

double quad_eval(double q11, double q12, double q22, double vx, double vy) {
    return q11 * vx * vx + 2.0 * q12 * vx * vy + q22 * vy * vy;
}

template <class Rec, class Eval>
DriftReport drift_of(const std::vector<Rec>& path, const IntegralMonitor& m, Eval eval) {
    DriftReport r;
    r.name = m.name;
    r.reference = m.capture_reference ? eval(m, path.front()) : m.reference;
    for (const Rec& rec : path) {
        r.max_abs = std::max(r.max_abs, std::abs(eval(m, rec) - r.reference));
    }
    r.max_rel = r.max_abs / std::max(std::abs(r.reference), 1e-12);
    return r;
}

double traj_B(const TrajectoryConstants& c, double x) {
    return -6.0 * x * x - 12.0 * c.c1 * x + 12.0 * c.c1 * c.c1;
}

double traj_C(const TrajectoryConstants& c, double x) {
    return x * x * x * x + 4.0 * c.c1 * x * x * x - 2.0 * c.c2 * x + c.c1 * c.c2;
}

// both real roots of the trajectory quadratic, with the discriminant clamped
// against roundoff; throws NoRealRoot / AtVerticalTangent
std::pair<double, double> traj_roots(const TrajectoryConstants& c, double x) {
    if (std::abs(2.0 * x - c.c1) <
        1e-10 * std::max({1.0, std::abs(x), std::abs(c.c1)})) {
        throw AtVerticalTangent("trajectory_solve: 2x - c1 = " + std::to_string(2.0 * x - c.c1) +
                                " at x = " + std::to_string(x));
    }
    double B = traj_B(c, x), C = traj_C(c, x);
    double disc = B * B - 36.0 * C;
    double scale = std::max({B * B, 36.0 * std::abs(C), 1.0});
    if (disc < -1e-12 * scale) {
        throw NoRealRoot("trajectory_solve: negative discriminant " + std::to_string(disc) +
                         " at x = " + std::to_string(x));
    }
    if (disc < 1e-12 * scale) {
        disc = 0.0;  // the square root would amplify roundoff at double roots
    }
    double r = std::sqrt(disc);
    return {(-B + r) / 18.0, (-B - r) / 18.0};
}

// Away from double roots the implicit derivative of the curve must agree
// with the slope ODE; this guards the algebra, not the caller's input.
void check_slope(const TrajectoryConstants& c, double x, double y) {
    double B = traj_B(c, x);
    double Fy = 18.0 * y + B;
    if (std::abs(Fy) <= 1e-5 * (std::abs(18.0 * y) + std::abs(B) + 1.0)) {
        return;
    }
    double Bp = -12.0 * x - 12.0 * c.c1;
    double Cp = 4.0 * x * x * x + 12.0 * c.c1 * x * x - 2.0 * c.c2;
    double implied = -(Bp * y + Cp) / Fy;
    double ode = (x * x + y) / (2.0 * x - c.c1);
    if (std::abs(implied - ode) > 1e-6 * std::max(1.0, std::abs(ode))) {
        throw Error("trajectory_solve: slope consistency check failed at x = " +
                    std::to_string(x));
    }
}

}  // namespace

std::vector<GeodesicState> integrate_geodesic(const Metric2& g, const GeodesicState& s0,
                                              double t1, const OdeOptions& opts) {
    std::vector<GeodesicState> out;
    auto f = [&g](double, const Arr<4>& s) { return geodesic_rhs(g, s); };
    auto ok = [&g](double, const Arr<4>& s) { return state_ok(g.chart, g.singular, s[0], s[1]); };
    dopri<4>(f, ok, s0.t, Arr<4>{s0.x, s0.y, s0.xd, s0.yd}, t1, opts, "integrate_geodesic",
             [&out](double t, const Arr<4>& s) {
                 out.push_back({t, s[0], s[1], s[2], s[3]});
             });
    return out;
}

std::vector<QuotientState> integrate_quotient(const ProjConn& pc, const QuotientState& q0,
                                              double x1, const OdeOptions& opts) {
    std::vector<QuotientState> out;
    auto f = [&pc](double x, const Arr<2>& s) { return quotient_rhs(pc, x, s); };
    auto ok = [&pc](double x, const Arr<2>& s) {
        return std::isfinite(s[1]) && state_ok(pc.chart, pc.singular, x, s[0]);
    };
    dopri<2>(f, ok, q0.x, Arr<2>{q0.y, q0.yx}, x1, opts, "integrate_quotient",
             [&out](double x, const Arr<2>& s) {
                 out.push_back({x, s[0], s[1]});
             });
    return out;
}

std::vector<GeodesicState> resample(const Metric2& g, const std::vector<GeodesicState>& path,
                                    int n) {
    if (path.size() < 2 || n < 1) {
        return path;
    }
    std::vector<Arr<4>> fs(path.size());
    for (size_t i = 0; i < path.size(); ++i) {
        fs[i] = geodesic_rhs(g, {path[i].x, path[i].y, path[i].xd, path[i].yd});
    }
    std::vector<GeodesicState> out;
    size_t seg = 0;
    for (int i = 0; i <= n; ++i) {
        double t = path.front().t + (path.back().t - path.front().t) * i / n;
        while (seg + 2 < path.size() &&
               (t - path[seg + 1].t) * (path.back().t - path.front().t) > 0.0) {
            ++seg;
        }
        const GeodesicState &a = path[seg], &b = path[seg + 1];
        double h = b.t - a.t;
        Arr<4> v = hermite<4>(h == 0.0 ? 0.0 : (t - a.t) / h, h,
                              {a.x, a.y, a.xd, a.yd}, fs[seg], {b.x, b.y, b.xd, b.yd},
                              fs[seg + 1]);
        out.push_back({t, v[0], v[1], v[2], v[3]});
    }
    return out;
}

std::vector<QuotientState> resample(const ProjConn& pc, const std::vector<QuotientState>& path,
                                    int n) {
    if (path.size() < 2 || n < 1) {
        return path;
    }
    std::vector<Arr<2>> fs(path.size());
    for (size_t i = 0; i < path.size(); ++i) {
        fs[i] = quotient_rhs(pc, path[i].x, {path[i].y, path[i].yx});
    }
    std::vector<QuotientState> out;
    size_t seg = 0;
    for (int i = 0; i <= n; ++i) {
        double x = path.front().x + (path.back().x - path.front().x) * i / n;
        while (seg + 2 < path.size() &&
               (x - path[seg + 1].x) * (path.back().x - path.front().x) > 0.0) {
            ++seg;
        }
        const QuotientState &a = path[seg], &b = path[seg + 1];
        double h = b.x - a.x;
        Arr<2> v = hermite<2>(h == 0.0 ? 0.0 : (x - a.x) / h, h, {a.y, a.yx}, fs[seg],
                              {b.y, b.yx}, fs[seg + 1]);
        out.push_back({x, v[0], v[1]});
    }
    return out;
}

double quotient_y_at(const std::vector<QuotientState>& path, double x) {
    if (path.size() < 2) {
        throw Error("quotient_y_at: need at least two records");
    }
    double dir = path.back().x - path.front().x;
    if ((x - path.front().x) * dir < 0.0 || (x - path.back().x) * dir > 0.0) {
        throw Error("quotient_y_at: abscissa outside the covered range");
    }
    size_t lo = 0, hi = path.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        ((x - path[mid].x) * dir >= 0.0 ? lo : hi) = mid;
    }
    const QuotientState &a = path[lo], &b = path[hi];
    double h = b.x - a.x;
    if (h == 0.0) {
        return a.y;
    }
    Arr<1> v = hermite<1>((x - a.x) / h, h, {a.y}, {a.yx}, {b.y}, {b.yx});
    return v[0];
}

std::vector<DriftReport> monitor(const std::vector<GeodesicState>& path,
                                 std::vector<IntegralMonitor> monitors) {
    if (path.empty()) {
        throw Error("monitor: empty trajectory");
    }
    std::vector<DriftReport> out;
    for (const auto& m : monitors) {
        if (!m.on_geodesic) {
            throw Error("monitor '" + m.name + "' has no geodesic evaluator");
        }
        out.push_back(drift_of(path, m, [](const IntegralMonitor& mm, const GeodesicState& s) {
            return mm.on_geodesic(s);
        }));
    }
    return out;
}

std::vector<DriftReport> monitor(const std::vector<QuotientState>& path,
                                 std::vector<IntegralMonitor> monitors) {
    if (path.empty()) {
        throw Error("monitor: empty trajectory");
    }
    std::vector<DriftReport> out;
    for (const auto& m : monitors) {
        if (!m.on_quotient) {
            throw Error("monitor '" + m.name + "' has no quotient evaluator");
        }
        out.push_back(drift_of(path, m, [](const IntegralMonitor& mm, const QuotientState& s) {
            return mm.on_quotient(s);
        }));
    }
    return out;
}

IntegralMonitor energy_monitor(const Metric2& g) {
    IntegralMonitor m;
    m.name = "H";
    m.on_geodesic = [g](const GeodesicState& s) {
        return quad_eval(eval_value(g.g11, s.x, s.y), eval_value(g.g12, s.x, s.y),
                         eval_value(g.g22, s.x, s.y), s.xd, s.yd);
    };
    return m;
}

IntegralMonitor killing_monitor(const std::string& name, const QuadraticForm2& K) {
    IntegralMonitor m;
    m.name = name;
    m.on_geodesic = [K](const GeodesicState& s) {
        return quad_eval(eval_value(K.q11, s.x, s.y), eval_value(K.q12, s.x, s.y),
                         eval_value(K.q22, s.x, s.y), s.xd, s.yd);
    };
    return m;
}

IntegralMonitor rational_monitor(const std::string& name, const QuadraticForm2& K,
                                 const Metric2& g) {
    IntegralMonitor m;
    m.name = name;
    m.on_geodesic = [name, K, g](const GeodesicState& s) {
        double num = quad_eval(eval_value(K.q11, s.x, s.y), eval_value(K.q12, s.x, s.y),
                               eval_value(K.q22, s.x, s.y), s.xd, s.yd);
        double den = quad_eval(eval_value(g.g11, s.x, s.y), eval_value(g.g12, s.x, s.y),
                               eval_value(g.g22, s.x, s.y), s.xd, s.yd);
        double vs = s.xd * s.xd + s.yd * s.yd;
        if (std::abs(den) <= 1e-12 * std::max(1.0, vs)) {
            throw NullDirection("monitor '" + name + "': null velocity");
        }
        return num / den;
    };
    m.on_quotient = [K, g](const QuotientState& s) {
        return rational_integral(K, g, s.x, s.y, s.yx);
    };
    return m;
}

Metric2 superintegrable_metric() {
    Metric2 g;
    g.label = "superintegrable";
    g.g11 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    g.g12 = field_from([](const auto& x, const auto& y) { return 0.5 * (x * x + y); });
    g.g22 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    g.chart = Chart{0.3, 4.0, 0.1, 4.0};
    g.singular = [](double x, double y) {
        return std::abs(x * x + y) <= 1e-8 * (1.0 + x * x + std::abs(y));
    };
    return g;
}

ProjConn superintegrable_pc() {
    Metric2 g = superintegrable_metric();
    ProjConn pc;
    pc.chart = g.chart;
    pc.singular = g.singular;
    pc.f[0] = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    pc.f[1] = field_from([](const auto& x, const auto& y) { return 2.0 * x / (x * x + y); });
    pc.f[2] = field_from([](const auto& x, const auto& y) { return -1.0 / (x * x + y); });
    pc.f[3] = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    pc.values = [](double x, double y) {
        double phi = x * x + y;
        return std::array<double, 4>{0.0, 2.0 * x / phi, -1.0 / phi, 0.0};
    };
    return pc;
}

double supint_I1(const QuotientState& q) {
    if (q.yx == 0.0) {
        throw Error("supint_I1: yx = 0");
    }
    return (2.0 * q.x * q.yx - (q.y + q.x * q.x)) / q.yx;
}

double supint_I2(const QuotientState& q) {
    if (q.yx == 0.0) {
        throw Error("supint_I2: yx = 0");
    }
    double p = q.y + q.x * q.x;
    return (9.0 * p * q.yx * q.yx - 4.0 * q.x * (q.x * q.x + 9.0 * q.y) * q.yx +
            12.0 * q.y * (q.x * q.x + q.y)) /
           q.yx;
}

double trajectory_solve(const TrajectoryConstants& c, double x, Branch branch) {
    auto r = traj_roots(c, x);
    double y = branch == Branch::Plus ? r.first : r.second;
    check_slope(c, x, y);
    return y;
}

double trajectory_solve_near(const TrajectoryConstants& c, double x, double y_prev) {
    auto r = traj_roots(c, x);
    double y = std::abs(r.first - y_prev) <= std::abs(r.second - y_prev) ? r.first : r.second;
    check_slope(c, x, y);
    return y;
}

std::vector<ReparamState> reparametrize(const TrajectoryConstants& c, double x0, double y0,
                                        double t1, int dir, int samples,
                                        const OdeOptions& opts) {
    if (c.k == 0.0) {
        throw BadParam("reparametrize: k = 0 is a degenerate (null) parametrization");
    }
    if (t1 <= 0.0 || samples < 2 || (dir != 1 && dir != -1)) {
        throw BadParam("reparametrize: need t1 > 0, samples >= 2, dir = +-1");
    }
    double F = 9.0 * y0 * y0 + traj_B(c, x0) * y0 + traj_C(c, x0);
    double fscale = std::max({9.0 * y0 * y0, std::abs(traj_B(c, x0) * y0),
                              std::abs(traj_C(c, x0)), 1.0});
    if (std::abs(F) > 1e-6 * fscale) {
        throw BadParam("reparametrize: (x0, y0) does not lie on the trajectory curve");
    }
    if (c.k * (2.0 * x0 - c.c1) <= 0.0) {
        throw BadParam("reparametrize: k (2x - c1) must be positive at the start");
    }

    std::vector<ReparamState> nodes;
    std::vector<double> node_f;
    double y_ref = y0;
    double sign = dir;
    double t_cur = 0.0, x_cur = x0;
    int flips = 0;
    OdeOptions run_opts = opts;
    run_opts.max_step = std::min(opts.max_step, t1 / samples);

    auto rhs_at = [&](double x, double y) {
        double arg = std::max(c.k * (2.0 * x - c.c1), 0.0);
        return sign * std::sqrt(arg) / (x * x + y);
    };
    for (;;) {
        auto f = [&](double, const Arr<1>& s) -> Arr<1> {
            double y = trajectory_solve_near(c, s[0], y_ref);
            return {rhs_at(s[0], y)};
        };
        auto ok = [&](double, const Arr<1>& s) {
            double x = s[0];
            if (!std::isfinite(x) || std::abs(x) > 1e6) {
                return false;
            }
            double y;
            try {
                y = trajectory_solve_near(c, x, y_ref);
            } catch (const Error&) {
                return false;
            }
            if (c.k * (2.0 * x - c.c1) <= 0.0) {
                return false;
            }
            return std::abs(x * x + y) > 1e-8 * (1.0 + x * x + std::abs(y));
        };
        auto sink = [&](double t, const Arr<1>& s) {
            double y = trajectory_solve_near(c, s[0], y_ref);
            y_ref = y;
            nodes.push_back({t, s[0], y});
            node_f.push_back(rhs_at(s[0], y));
        };
        try {
            dopri<1>(f, ok, t_cur, Arr<1>{x_cur}, t1, run_opts, "reparametrize", sink);
            break;
        } catch (const LeftChart& e) {
            double xb = e.state[0];
            double yb = trajectory_solve_near(c, xb, y_ref);
            double arg = c.k * (2.0 * xb - c.c1);
            double arg_scale = std::abs(c.k) * (1.0 + std::abs(xb) + std::abs(c.c1));
            double D = xb * xb + yb;
            if (std::abs(arg) <= 1e-4 * arg_scale &&
                std::abs(D) > 1e-6 * (1.0 + xb * xb + std::abs(yb))) {
                // turning point: mirror across using the local model
                // x(t* + d) = x* + k d^2 / (2 D^2), which flips the branch
                if (++flips > 16) {
                    throw Error("reparametrize: more than 16 turning points");
                }
                double xs = 0.5 * c.c1;
                double y_pre = y_ref;
                double ys = trajectory_solve_near(c, xs, y_pre);
                double delta = std::min(1e-6, 0.5 * (t1 - e.at));
                double xk = xs + c.k * delta * delta / (2.0 * D * D);
                auto rk = traj_roots(c, xk);
                // continue on the sheet opposite the approach
                y_ref = (y_pre - ys) * (rk.first - ys) < 0.0 ? rk.first : rk.second;
                sign = -sign;
                t_cur = e.at + delta;
                x_cur = xk;
                continue;
            }
            throw LeftChart("reparametrize: reached the degenerate locus x^2 + y = 0 at t = " +
                                std::to_string(e.at),
                            e.at, {xb, yb});
        }
    }

    // uniform grid via Hermite segments of x(t); y read off the curve
    std::vector<ReparamState> out;
    size_t seg = 0;
    double yr = y0;
    for (int i = 0; i <= samples; ++i) {
        double t = t1 * i / samples;
        while (seg + 2 < nodes.size() && t > nodes[seg + 1].t) {
            ++seg;
        }
        double h = nodes[seg + 1].t - nodes[seg].t;
        Arr<1> v = hermite<1>(h == 0.0 ? 0.0 : (t - nodes[seg].t) / h, h, {nodes[seg].x},
                              {node_f[seg]}, {nodes[seg + 1].x}, {node_f[seg + 1]});
        double y = trajectory_solve_near(c, v[0], yr);
        yr = y;
        out.push_back({t, v[0], y});
    }
    return out;
}

int independence_rank(const std::array<SigmaField, 3>& sig, const Vec2& p, const Vec2& momenta) {
    Jet2d s[3][3];  // [which][s11, s12, s22]
    double sgn[3];
    for (int a = 0; a < 3; ++a) {
        s[a][0] = eval2(sig[a].s11, p.x, p.y);
        s[a][1] = eval2(sig[a].s12, p.x, p.y);
        s[a][2] = eval2(sig[a].s22, p.x, p.y);
        Jet2d det = s[a][0] * s[a][2] - s[a][1] * s[a][1];
        double sc = std::max({std::abs(s[a][0].v), std::abs(s[a][1].v), std::abs(s[a][2].v)});
        if (std::abs(det.v) <= 1e-10 * sc * sc) {
            throw SingularMetric("independence_rank: sigma " + std::to_string(a + 1) +
                                 " degenerate at the sample point");
        }
        sgn[a] = det.v > 0.0 ? 1.0 : -1.0;
    }

    // quadratic forms of the three integrals: H from sig[0] alone, I and J
    // from sig[0] paired with sig[1], sig[2]; all free of radicals
    auto form = [&](int a) -> std::array<Jet2d, 3> {
        if (a == 0) {
            Jet2d det = s[0][0] * s[0][2] - s[0][1] * s[0][1];
            Jet2d w = 0.5 * abs(det);
            return {w * s[0][0], w * s[0][1], w * s[0][2]};
        }
        const Jet2d &g11 = s[0][0], &g12 = s[0][1], &g22 = s[0][2];
        const Jet2d &b11 = s[a][0], &b12 = s[a][1], &b22 = s[a][2];
        Jet2d t11 = g11 * b22 - g12 * b12, t12 = g12 * b11 - g11 * b12;
        Jet2d t21 = g12 * b22 - g22 * b12, t22 = g22 * b11 - g12 * b12;
        Jet2d m11 = t11 * g11 + t12 * g12;
        Jet2d m12 = t11 * g12 + t12 * g22;
        Jet2d m22 = t21 * g12 + t22 * g22;
        return {sgn[a] * m11, sgn[a] * m12, sgn[a] * m22};
    };

    double J[4][3];
    for (int a = 0; a < 3; ++a) {
        auto q = form(a);
        J[0][a] = quad_eval(q[0].dx, q[1].dx, q[2].dx, momenta.x, momenta.y);
        J[1][a] = quad_eval(q[0].dy, q[1].dy, q[2].dy, momenta.x, momenta.y);
        J[2][a] = 2.0 * (q[0].v * momenta.x + q[1].v * momenta.y);
        J[3][a] = 2.0 * (q[1].v * momenta.x + q[2].v * momenta.y);
    }

    std::vector<double> ata(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int r = 0; r < 4; ++r) {
                acc += J[r][i] * J[r][j];
            }
            ata[i * 3 + j] = acc;
        }
    }
    std::vector<double> evals, evecs;
    jacobi_eigen_sym(ata, 3, evals, evecs);
    double smax = std::sqrt(std::max(evals[2], 0.0));
    if (smax == 0.0) {
        return 0;
    }
    int rank = 0;
    for (int i = 0; i < 3; ++i) {
        if (std::sqrt(std::max(evals[i], 0.0)) > 1e-8 * smax) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace projconn
