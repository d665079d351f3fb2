// End-to-end acceptance run: eight criteria, one pass/fail line each, all
// tolerances pinned in place.  Exit code is the number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "projconn/catalog.hpp"
#include "projconn/dynamics.hpp"
#include "projconn/metrization.hpp"

using namespace projconn;

namespace {

const double PI = std::acos(-1.0);

struct Outcome {
    bool pass = true;
    std::string worst_name;
    double worst_ratio = 0.0;

    void gate(const std::string& name, double value, double threshold) {
        double ratio = value / threshold;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_name = name;
        }
        if (!(value < threshold)) {
            pass = false;
        }
    }
    void expect(const std::string& name, bool ok) {
        if (!ok) {
            pass = false;
            worst_name = name;
            worst_ratio = 1e9;
        }
    }
};

double pc_diff(const ProjConn& a, const ProjConn& b, double x, double y) {
    std::array<double, 4> va = a.values(x, y);
    std::array<double, 4> vb = b.values(x, y);
    double m = 0.0, s = 1e-30;
    for (int i = 0; i < 4; ++i) {
        m = std::max(m, std::abs(va[i] - vb[i]));
        s = std::max({s, std::abs(va[i]), std::abs(vb[i])});
    }
    return m / s;
}

// drift of a scalar along a path, relative to the largest magnitude seen;
// quantities that vanish identically are measured absolutely
template <class State>
double scaled_drift(const std::vector<State>& path, const std::function<double(const State&)>& f) {
    double ref = f(path.front());
    double dmax = 0.0, vmax = std::abs(ref);
    for (const State& s : path) {
        double v = f(s);
        dmax = std::max(dmax, std::abs(v - ref));
        vmax = std::max(vmax, std::abs(v));
    }
    return vmax > 1e-9 ? dmax / vmax : dmax;
}

// ---- 1: sphere pipeline ------------------------------------------------

Outcome criterion1() {
    Outcome o;
    CatalogEntry e = make("sphere");
    ProjConn pc = proj_conn_from_metric(e.metric);
    VectorField2 X;
    X.X1 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    X.X2 = field_from([](const auto& x, const auto& y) {
        auto s = sin(y);
        return s * s * cos(x);
    });

    RngStream rng(101);
    double wc = 0.0, wf = 0.0;
    for (int i = 0; i < 50; ++i) {
        Vec2 p = sample_chart_point(e.metric.chart, e.metric.singular, rng);
        std::array<double, 4> f = pc.values(p.x, p.y);
        double sy = std::sin(p.y), cy = std::cos(p.y);
        std::array<double, 4> want{sy * cy, 0.0, 2.0 * cy / sy, 0.0};
        for (int k = 0; k < 4; ++k) {
            wc = std::max(wc, std::abs(f[k] - want[k]));
        }
        wf = std::max(wf, projective_field_residual(e.metric, X, p.x, p.y).relative());
    }
    o.gate("connection coefficients", wc, 1e-12);
    o.gate("field residual", wf, 1e-6);

    auto rational = [](const QuotientState& q) {
        double sy = std::sin(q.y), cy = std::cos(q.y);
        double s2 = sy * sy;
        return (s2 * sy * std::cos(q.x) * cy + s2 * std::sin(q.x) * q.yx) / (s2 + q.yx * q.yx);
    };
    double wd = 0.0;
    int runs = 0;
    for (int i = 0; runs < 10 && i < 60; ++i) {
        QuotientState q0{rng.uniform(-1.5, 1.5), rng.uniform(0.8, 2.3), rng.uniform(-1.2, 1.2)};
        for (double span : {0.6, 0.3, 0.15}) {
            try {
                std::vector<QuotientState> path = integrate_quotient(pc, q0, q0.x + span);
                wd = std::max(wd, scaled_drift<QuotientState>(path, rational));
                ++runs;
                break;
            } catch (const Error&) {
            }
        }
    }
    o.expect("10 quotient runs", runs == 10);
    o.gate("rational integral drift", wd, 1e-7);
    return o;
}

// ---- 2: metrizability closure over the catalog -------------------------

Outcome criterion2() {
    Outcome o;
    int entries = 0;
    double worst = 0.0;
    for (const EntrySchema& s : list()) {
        CatalogEntry e = make(s.label);
        ProjConn pc = proj_conn_from_metric(e.metric);
        SigmaField sig = sigma_from_metric(e.metric);
        RngStream rng(202 + entries);
        for (int i = 0; i < 100; ++i) {
            Vec2 p = sample_chart_point(e.metric.chart, e.metric.singular, rng);
            worst = std::max(worst, metrizability_residual(pc, sig, p.x, p.y).max_relative());
        }
        ++entries;
    }
    o.expect("catalog size >= 16", entries >= 16);
    o.gate("four-residual closure", worst, 1e-9);

    double wpair = 0.0;
    for (const char* base : {"dini.liouville", "dini.jordan"}) {
        ProjConn a = proj_conn_from_metric(make(std::string(base) + ".g1").metric);
        ProjConn b = proj_conn_from_metric(make(std::string(base) + ".g2").metric);
        CatalogEntry e = make(std::string(base) + ".g1");
        RngStream rng(77);
        for (int i = 0; i < 100; ++i) {
            Vec2 p = sample_chart_point(e.metric.chart, e.metric.singular, rng);
            wpair = std::max(wpair, pc_diff(a, b, p.x, p.y));
        }
    }
    o.gate("pair connection agreement", wpair, 1e-9);
    return o;
}

// ---- 3: recovered symmetry of the degree-3 family ----------------------

Outcome criterion3() {
    Outcome o;
    std::vector<SigmaField> basis;
    for (const char* gl : {"dom3.g1", "dom3.g2", "dom3.g3"}) {
        SigmaField s = sigma_from_metric(make(gl).metric);
        s.chart = Chart{0.9, 1.3, 0.15, 0.45};
        basis.push_back(s);
    }
    std::array<double, 3> ev = dom3_eigenvalues();
    VectorField2 X = recover_projective_field(basis, {ev[0], ev[1], ev[2]}, 2);

    double weig = 0.0;
    std::array<double, 3> measured{};
    for (int k = 0; k < 3; ++k) {
        SigmaField L = lie_derivative_sigma(basis[k], X);
        double num = 0.0, den = 0.0;
        for (double x : {0.95, 1.05, 1.15, 1.25}) {
            for (double y : {0.2, 0.25, 0.3, 0.35, 0.4}) {
                double m = 0.0, sc = 1e-30;
                for (int i = 0; i < 2; ++i) {
                    for (int j = i; j < 2; ++j) {
                        double lv = eval_value(L.comp(i, j), x, y);
                        double sv = eval_value(basis[k].comp(i, j), x, y);
                        m = std::max(m, std::abs(lv - ev[k] * sv));
                        sc = std::max({sc, std::abs(sv), std::abs(lv)});
                        num += lv * sv;
                        den += sv * sv;
                    }
                }
                weig = std::max(weig, m / sc);
            }
        }
        measured[k] = num / den;
    }
    o.gate("eigen-residual", weig, 1e-6);

    // normalize the measured triple on its largest member and compare ratios
    double scale = ev[2] / measured[2];
    double wr = 0.0;
    for (int k = 0; k < 3; ++k) {
        wr = std::max(wr, std::abs(scale * measured[k] - ev[k]));
    }
    o.gate("eigenvalue ratios", wr, 1e-6);
    return o;
}

// ---- 4: trajectory cross-check -----------------------------------------

Outcome criterion4() {
    Outcome o;
    ProjConn pc = superintegrable_pc();
    RngStream rng(404);
    int runs = 0;
    double wsup = 0.0;
    for (int i = 0; runs < 20 && i < 200; ++i) {
        QuotientState q0{rng.uniform(0.8, 2.0), rng.uniform(0.3, 2.0), 0.0};
        double mag = rng.uniform(0.25, 1.2);
        q0.yx = rng.uniform() < 0.5 ? mag : -mag;
        TrajectoryConstants c{supint_I1(q0), supint_I2(q0), 1.0};
        double x1 = q0.x + 0.7;
        // keep the vertical-tangent abscissa x = c1/2 outside the window
        if (c.c1 / 2.0 > q0.x - 0.1 && c.c1 / 2.0 < x1 + 0.1) {
            continue;
        }
        std::vector<QuotientState> path;
        bool got = false;
        for (double span : {0.7, 0.35, 0.2}) {
            try {
                path = integrate_quotient(pc, q0, q0.x + span);
                got = true;
                break;
            } catch (const Error&) {
            }
        }
        if (!got) {
            continue;
        }
        bool usable = true;
        double wrun = 0.0;
        try {
            for (const QuotientState& q : path) {
                double ya = trajectory_solve_near(c, q.x, q.y);
                wrun = std::max(wrun, std::abs(ya - q.y) / std::max(1.0, std::abs(q.y)));
            }
        } catch (const Error&) {
            usable = false;
        }
        if (!usable) {
            continue;
        }
        wsup = std::max(wsup, wrun);
        ++runs;
    }
    o.expect("20 measured-constant runs", runs == 20);
    o.gate("algebraic vs integrated curve", wsup, 1e-6);

    // both constants zero: the quadratic in y is a perfect square
    TrajectoryConstants c0{0.0, 0.0, 1.0};
    double wpar = 0.0;
    for (int i = 0; i <= 50; ++i) {
        double x = 0.4 + 2.1 * i / 50.0;
        wpar = std::max(wpar, std::abs(trajectory_solve(c0, x, Branch::Plus) - x * x / 3.0));
        wpar = std::max(wpar, std::abs(trajectory_solve(c0, x, Branch::Minus) - x * x / 3.0));
    }
    o.gate("double-root parabola", wpar, 1e-10);

    // reparametrized runs: H = k and the squared-speed relation, checked by
    // five-point differentiation of the uniform output grid
    double wh = 0.0, wy = 0.0;
    const double states[3][3] = {{1.0, 0.8, 0.6}, {1.4, 0.6, 1.1}, {0.9, 1.2, 0.7}};
    for (const auto& st : states) {
        QuotientState q0{st[0], st[1], st[2]};
        TrajectoryConstants c{supint_I1(q0), supint_I2(q0), 1.0};
        std::vector<ReparamState> run = reparametrize(c, q0.x, q0.y, 1.0, +1, 400);
        double h = run[1].t - run[0].t;
        for (std::size_t i = 2; i + 2 < run.size(); i += 7) {
            double xd = (-run[i + 2].x + 8.0 * run[i + 1].x - 8.0 * run[i - 1].x + run[i - 2].x) /
                        (12.0 * h);
            double yd = (-run[i + 2].y + 8.0 * run[i + 1].y - 8.0 * run[i - 1].y + run[i - 2].y) /
                        (12.0 * h);
            double x = run[i].x, y = run[i].y;
            wh = std::max(wh, std::abs((x * x + y) * xd * yd - c.k) / c.k);
            wy = std::max(wy, std::abs(yd * yd * (2.0 * x - c.c1) - c.k) / c.k);
        }
    }
    o.gate("H = k along reparametrized runs", wh, 1e-6);
    o.gate("squared-speed relation", wy, 1e-6);
    return o;
}

// ---- 5: independence of the integral triple ----------------------------

Outcome criterion5() {
    Outcome o;
    RngStream rng(505);
    int draws = 0, control = 0;
    bool all3 = true, dropped = true;
    while (draws < 100) {
        double theta = rng.uniform(0.12, PI - 0.12);
        double phi = rng.uniform(0.0, 2.0 * PI);
        double u1 = std::sin(theta) * std::cos(phi);
        double u2 = std::sin(theta) * std::sin(phi);
        double u3 = std::cos(theta);
        if (std::max({std::abs(u1), std::abs(u2), std::abs(u3)}) > 0.985) {
            continue;
        }
        std::array<SigmaField, 3> sig = spherical_sigma(theta, phi);
        bool got = false;
        for (int tries = 0; tries < 40 && !got; ++tries) {
            Vec2 p = sample_chart_point(sig[0].chart, nullptr, rng);
            Vec2 mom{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            if (std::abs(mom.x) + std::abs(mom.y) < 0.25) {
                continue;
            }
            try {
                int rk = independence_rank(sig, p, mom);
                all3 = all3 && rk == 3;
                got = true;
                ++draws;
                if (control < 20) {
                    std::array<SigmaField, 3> degenerate{sig[0], sig[0], sig[2]};
                    dropped = dropped && independence_rank(degenerate, p, mom) < 3;
                    ++control;
                }
            } catch (const SingularMetric&) {
            }
        }
    }
    o.expect("rank 3 at 100 generic draws", all3);
    o.expect("rank drop under repeated sigma", dropped && control == 20);

    struct Axis {
        double theta, phi;
        const char* tag;
        int gen;
        double sign;
    };
    const Axis table[6] = {{PI / 2, 0.0, "+sigma1", 0, 1.0},
                           {PI / 2, PI, "-sigma1", 0, -1.0},
                           {PI / 2, PI / 2, "+sigma2", 1, 1.0},
                           {PI / 2, 3 * PI / 2, "-sigma2", 1, -1.0},
                           {0.0, 1.0, "+sigma3", 2, 1.0},
                           {PI, 2.0, "-sigma3", 2, -1.0}};
    const char* gens[3] = {"dom3.g1", "dom3.g2", "dom3.g3"};
    bool axes_ok = true;
    for (const Axis& a : table) {
        bool threw = false;
        try {
            dom3_parametrize(0.0, a.theta, a.phi);
        } catch (const ExceptionalPoint& e) {
            threw = std::string(e.what()).find(a.tag) != std::string::npos;
        }
        // the combination collapses onto the named generator
        SigmaField got = spherical_sigma(a.theta, a.phi)[0];
        SigmaField want = sigma_from_metric(make(gens[a.gen]).metric);
        double diff = 0.0;
        for (double x : {0.95, 1.2}) {
            for (double y : {0.2, 0.4}) {
                for (int i = 0; i < 2; ++i) {
                    for (int j = i; j < 2; ++j) {
                        diff = std::max(diff, std::abs(eval_value(got.comp(i, j), x, y) -
                                                       a.sign * eval_value(want.comp(i, j), x, y)));
                    }
                }
            }
        }
        axes_ok = axes_ok && threw && diff < 1e-12;
    }
    o.expect("six homothetic rays named and identified", axes_ok);
    return o;
}

// ---- 6: distinguished coordinates --------------------------------------

// best flow distance between q and the orbit of p: coarse scan, then local
// refinement of the minimizer.  A positive verdict needs near-exact contact,
// so orbits that merely pass close stay undecided (-1) instead of polluting
// the comparison.
int flow_search(const LieAction& a, const Vec2& p, const Vec2& q) {
    double s = std::max({1.0, std::abs(q.x), std::abs(q.y)});
    auto dist = [&](double t) {
        Vec2 r = pullback_flow(a, p, t);
        return std::max(std::abs(r.x - q.x), std::abs(r.y - q.y)) / s;
    };
    const int n = 16000;
    double best = 1e300, tbest = 0.0;
    for (int i = 0; i <= n; ++i) {
        double t = -8.0 + 16.0 * i / n;
        double d = dist(t);
        if (d < best) {
            best = d;
            tbest = t;
        }
    }
    double dt = 16.0 / n, fine = best, tf = tbest;
    for (int it = 0; it < 80 && dt > 1e-14; ++it) {
        bool moved = false;
        for (int k = -2; k <= 2; ++k) {
            double d = dist(tf + k * dt);
            if (d < fine) {
                fine = d;
                tf = tf + k * dt;
                moved = true;
            }
        }
        if (!moved) {
            dt *= 0.35;
        }
    }
    if (fine < 1e-8) {
        return 1;
    }
    if (best > 5e-2) {
        return 0;
    }
    return -1;
}

Outcome criterion6() {
    Outcome o;
    struct Column {
        LieAction a;
        int want_components;
    };
    std::vector<Column> cols = {{classify(Mat2{1.7, 0.0, 0.0, 1.0}), 4},
                                {classify(Mat2{1.0, 0.0, 1.0, 1.0}), 2},
                                {classify(Mat2{0.0, -1.0, 1.0, 0.0}), 1},
                                {classify(Mat2{0.6, -1.0, 1.0, 0.6}), 1}};
    RngStream rng(606);
    auto draw = [&rng]() {
        double m = rng.uniform(0.2, 1.5);
        return rng.uniform() < 0.5 ? m : -m;
    };

    double wu = 0.0, ws = 0.0;
    bool comp_ok = true;
    for (const Column& col : cols) {
        if (component_count(col.a) != col.want_components) {
            comp_ok = false;
        }
        int done = 0;
        while (done < 500) {
            Vec2 p{draw(), draw()};
            double t = rng.uniform(-3.0, 3.0);
            Vec2 q = pullback_flow(col.a, p, t);
            OrbitCoords cp, cq;
            try {
                cp = distinguished_coords(col.a, p);
                cq = distinguished_coords(col.a, q);
            } catch (const OnEigenspace&) {
                continue;
            }
            if (col.a.kind == 3 && col.a.lambda > 0.0) {
                // u is invariant modulo the winding lattice
                double d = std::log(cq.u / cp.u);
                double step = 2.0 * PI * col.a.lambda;
                double rem = std::abs(d - step * std::round(d / step));
                wu = std::max(wu, rem);
            } else {
                wu = std::max(wu, std::abs(cq.u - cp.u) / std::max(1.0, std::abs(cp.u)));
            }
            double ds = cq.s - cp.s - t;
            if (col.a.kind == 3) {
                ds -= 2.0 * PI * std::round(ds / (2.0 * PI));
            }
            ws = std::max(ws, std::abs(ds));
            if (cq.component != cp.component) {
                comp_ok = false;
            }
            ++done;
        }
    }
    o.gate("u flow-constant", wu, 1e-10);
    o.gate("s advances by t", ws, 1e-10);
    o.expect("component counts (4, 2, 1, 1) and flow-stability", comp_ok);

    bool oracle_ok = true;
    int decided = 0;
    for (const Column& col : cols) {
        for (int i = 0; i < 200; ++i) {
            Vec2 p{draw(), draw()};
            Vec2 q = i % 2 == 0 ? pullback_flow(col.a, p, rng.uniform(-3.0, 3.0))
                                : Vec2{draw(), draw()};
            int want = flow_search(col.a, p, q);
            if (want < 0) {
                continue;
            }
            bool got;
            try {
                got = orbit_equivalent(col.a, p, q, 1e-6);
            } catch (const OnEigenspace&) {
                continue;
            }
            oracle_ok = oracle_ok && got == (want == 1);
            ++decided;
        }
    }
    o.expect("orbit equivalence matches flow search", oracle_ok && decided > 500);
    return o;
}

// ---- 7: special function ODEs ------------------------------------------

Outcome criterion7() {
    Outcome o;
    double wy1 = 0.0;
    for (int branch : {+1, -1}) {
        ScalarField Y1 = halfline_Y1_closed(branch);
        for (int i = 0; i <= 100; ++i) {
            double y = branch * (0.25 + 4.75 * i / 100.0);
            Jet2d j = eval2(Y1, 0.0, y);
            double a = y * y * j.dyy, b = -0.5 * (y - 3.0) * j.dy, c = 0.5 * j.v;
            wy1 = std::max(wy1, std::abs(a + b + c) /
                                    std::max({std::abs(a), std::abs(b), std::abs(c), 1e-30}));
        }
    }
    o.gate("half-line second solution ODE", wy1, 1e-7);

    double wxi = 0.0;
    for (double lambda : {0.0, 0.5, 2.0}) {
        ScalarField Xi = rotational_Xi(lambda);
        for (int i = 0; i <= 60; ++i) {
            double y = -3.0 + 6.0 * i / 60.0;
            Jet2d j = eval2(Xi, 0.0, y);
            double a = (y * y + 1.0) * j.dyy, b = -0.5 * (y - 3.0 * lambda) * j.dy,
                   c = 0.5 * j.v;
            wxi = std::max(wxi, std::abs(a + b + c) /
                                    std::max({std::abs(a), std::abs(b), std::abs(c), 1e-30}));
        }
    }
    o.gate("rotational ODE via the antiderivative", wxi, 1e-7);

    double wq = 0.0;
    for (int branch : {+1, -1}) {
        std::map<std::string, double> closed{{"branch", double(branch)}};
        std::map<std::string, double> quad{{"branch", double(branch)}, {"quadrature", 1.0}};
        CatalogEntry ec = make("C.8", closed);
        ProjConn a = proj_conn_from_metric(ec.metric);
        ProjConn b = proj_conn_from_metric(make("C.8", quad).metric);
        RngStream rng(707);
        for (int i = 0; i < 50; ++i) {
            Vec2 p = sample_chart_point(ec.metric.chart, ec.metric.singular, rng);
            wq = std::max(wq, pc_diff(a, b, p.x, p.y));
        }
    }
    o.gate("closed form vs quadrature", wq, 1e-7);
    return o;
}

// ---- 8: geodesics project onto quotient solutions ----------------------

Outcome criterion8() {
    Outcome o;
    struct Run {
        const char* label;
        GeodesicState s0;
        double t1;
    };
    const Run runs[5] = {{"sphere", {0.0, 0.2, 1.1, 0.9, 0.25}, 0.8},
                         {"dom3.g1", {0.0, 0.6, -0.2, 0.7, 0.3}, 0.8},
                         {"A.1", {0.0, 0.6, -0.6, 0.5, 0.15}, 0.5},
                         {"B.5", {0.0, 0.45, 0.6, 0.4, 0.1}, 0.6},
                         {"C.7", {0.0, 0.4, 0.5, 0.5, 0.1}, 0.5}};
    double wode = 0.0, wover = 0.0;
    bool all_ran = true;
    for (const Run& r : runs) {
        CatalogEntry e = make(r.label);
        ProjConn pc = proj_conn_from_metric(e.metric);
        std::vector<GeodesicState> path;
        try {
            path = integrate_geodesic(e.metric, r.s0, r.t1);
        } catch (const Error&) {
            all_ran = false;
            continue;
        }
        std::vector<JetPoint> jets;
        for (const GeodesicState& s : path) {
            Christoffel2 G = christoffel(e.metric, s.x, s.y);
            double xdd = -(G.G[0][0][0] * s.xd * s.xd + 2.0 * G.G[0][0][1] * s.xd * s.yd +
                           G.G[0][1][1] * s.yd * s.yd);
            double ydd = -(G.G[1][0][0] * s.xd * s.xd + 2.0 * G.G[1][0][1] * s.xd * s.yd +
                           G.G[1][1][1] * s.yd * s.yd);
            jets.push_back(jet_project(s.t, s.x, s.y, s.xd, s.yd, xdd, ydd));
        }
        for (const JetPoint& j : jets) {
            std::array<double, 4> f = pc.values(j.x, j.y);
            double rhs = f[0] + j.yx * (f[1] + j.yx * (f[2] + j.yx * f[3]));
            wode = std::max(wode, std::abs(j.yxx - rhs) / std::max(1.0, std::abs(j.yxx)));
        }
        QuotientState q0{jets.front().x, jets.front().y, jets.front().yx};
        std::vector<QuotientState> qpath = integrate_quotient(pc, q0, jets.back().x);
        for (const JetPoint& j : jets) {
            wover = std::max(wover, std::abs(quotient_y_at(qpath, j.x) - j.y) /
                                        std::max(1.0, std::abs(j.y)));
        }
    }
    o.expect("five catalog runs complete", all_ran);
    o.gate("quotient ODE residual of projected jets", wode, 1e-6);
    o.gate("overlay with integrated quotient", wover, 1e-6);
    return o;
}

}  // namespace

int main() {
    struct Entry {
        const char* title;
        Outcome (*fn)();
    };
    const Entry entries[8] = {
        {"sphere pipeline: coefficients, symmetry residual, rational drift", criterion1},
        {"metrizability closure across the catalog, pair agreement", criterion2},
        {"recovered symmetry of the degree-3 family: eigenstructure", criterion3},
        {"trajectory cross-check: algebraic curve, parabola, reparametrization", criterion4},
        {"independence of the integral triple, homothetic rays", criterion5},
        {"distinguished coordinates: invariance, components, orbit tests", criterion6},
        {"special function ODEs and quadrature agreement", criterion7},
        {"geodesics project onto quotient solutions", criterion8},
    };

    auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (int i = 0; i < 8; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = entries[i].fn();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::printf("%s  %d. %-68s [%5lld ms, worst %s = %.2e of gate]\n",
                    o.pass ? "PASS" : "FAIL", i + 1, entries[i].title,
                    static_cast<long long>(ms), o.worst_name.c_str(), o.worst_ratio);
        if (!o.pass) {
            ++failed;
        }
    }
    auto total = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    std::printf("%d of 8 criteria passed in %lld ms\n", 8 - failed,
                static_cast<long long>(total));
    return failed;
}
