// Command-line front end: catalog browsing, residual check suites, geodesic
// and quotient integration with conserved-quantity monitors, superintegrable
// trajectory construction, and classification of symmetry actions on the
// metrization space.
//
// Exit codes: 0 all gates passed, 1 a numeric gate failed, 2 usage or
// configuration error.  Reports are byte-identical across identical
// invocations except for the timestamp field, which also carries the
// wall-clock reading.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "projconn/catalog.hpp"
#include "projconn/dynamics.hpp"
#include "projconn/metrization.hpp"

using nlohmann::json;
using namespace projconn;

namespace {

constexpr const char* kVersion = "0.1.0";

unsigned long default_seed() {
    if (const char* s = std::getenv("PROJCONN_SEED")) {
        return std::strtoul(s, nullptr, 10);
    }
    return 42;
}

std::string wall_stamp(std::chrono::steady_clock::time_point t0) {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    return std::string(buf) + " wall_ms=" + std::to_string(ms);
}

struct Report {
    json r;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    bool all_pass = true;

    explicit Report(const std::string& command) {
        r["schema"] = 1;
        r["version"] = kVersion;
        r["command"] = command;
        r["checks"] = json::array();
    }

    void check(const std::string& name, double value, double threshold) {
        bool ok = value < threshold;
        all_pass = all_pass && ok;
        r["checks"].push_back(
            {{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", ok}});
    }

    // the timestamp is the only run-dependent field; it also carries the
    // wall clock so the rest of the report stays reproducible
    int finish(const std::string& out_path) {
        r["pass"] = all_pass;
        r["timestamp"] = wall_stamp(t0);
        std::string text = r.dump(2);
        if (out_path.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream f(out_path);
            if (!f) {
                throw BadParam("cannot open output file " + out_path);
            }
            f << text << "\n";
        }
        return all_pass ? 0 : 1;
    }
};

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream f(path);
    if (!f) {
        throw BadParam("cannot open output file " + path);
    }
    f << header << "\n";
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            f << (i ? "," : "") << buf;
        }
        f << "\n";
    }
}

void write_plot_script(const std::string& csv_path, int xcol, int ycol,
                       const std::string& extra = "") {
    std::ofstream f(csv_path + ".gp");
    f << "set datafile separator ','\n";
    f << "set key autotitle columnhead\n";
    f << "plot '" << csv_path << "' using " << xcol << ":" << ycol << " with lines\n";
    if (!extra.empty()) {
        f << extra;
    }
}

// A/B/C tags follow the eigenvalue type of the pencil: A real distinct
// (Liouville), B complex, C Jordan block.
std::string dini_type(const std::string& label) {
    if (label.rfind("A.", 0) == 0 || label.rfind("dini.liouville", 0) == 0) {
        return "A";
    }
    if (label.rfind("B.", 0) == 0 || label.rfind("dini.complex", 0) == 0) {
        return "B";
    }
    if (label.rfind("C.", 0) == 0 || label.rfind("dini.jordan", 0) == 0) {
        return "C";
    }
    return "";
}

// Parameter flags shared by check/geodesic/quotient.  --C is a shorthand for
// the unit-circle constant of the complex families: C = e^{i phiC}, so +1
// maps to phiC = 0 and -1 has no representative in [0, pi).
struct ParamFlags {
    std::map<std::string, double> storage;
    std::vector<std::pair<std::string, CLI::Option*>> opts;
    double C = 0.0;
    CLI::Option* c_opt = nullptr;

    void attach(CLI::App* cmd) {
        // long-only help so the catalog parameter h can keep its own name
        cmd->set_help_flag("--help", "print this help and exit");
        static const char* keys[] = {"eps",   "h",      "xi",     "rho",        "kappa",
                                     "lambda", "theta", "phi",    "c",          "Yconst",
                                     "branch", "quadrature", "phiC"};
        for (const char* k : keys) {
            opts.emplace_back(k, cmd->add_option("--" + std::string(k), storage[k],
                                                 "catalog parameter " + std::string(k)));
        }
        c_opt = cmd->add_option("--C", C, "shorthand for the phase constant, C = e^{i phiC}");
        c_opt->excludes(opts.back().second);
    }

    std::map<std::string, double> collect() const {
        std::map<std::string, double> out;
        for (const auto& kv : opts) {
            if (kv.second->count() > 0) {
                out[kv.first] = storage.at(kv.first);
            }
        }
        if (c_opt != nullptr && c_opt->count() > 0) {
            if (C == 1.0) {
                out["phiC"] = 0.0;
            } else if (C == -1.0) {
                throw BadParam("C = -1 means phiC = pi, outside the family range [0, pi)");
            } else {
                throw BadParam("--C accepts only +1 or -1; use --phiC for other phases");
            }
        }
        return out;
    }
};

std::vector<Vec2> sample_points(const Metric2& g, int n, RngStream& rng) {
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        pts.push_back(sample_chart_point(g.chart, g.singular, rng));
    }
    return pts;
}

json points_json(const std::vector<Vec2>& pts) {
    json j = json::array();
    for (const auto& p : pts) {
        j.push_back({p.x, p.y});
    }
    return j;
}

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

double ode_residual_relative(double a, double b, double c) {
    double s = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-30});
    return std::abs(a + b + c) / s;
}

// ---------------------------------------------------------------- catalog

int run_catalog(const std::string& label, const std::string& out) {
    Report rep("catalog");
    rep.r["config"] = {{"label", label}};
    json entries = json::array();
    for (const EntrySchema& s : list()) {
        if (!label.empty() && s.label != label) {
            continue;
        }
        json params = json::array();
        for (const ParamSpec& p : s.params) {
            params.push_back({{"name", p.name}, {"default", p.value}, {"range", p.range}});
        }
        entries.push_back({{"label", s.label},
                           {"type", dini_type(s.label)},
                           {"params", params},
                           {"chart", {s.chart.x0, s.chart.x1, s.chart.y0, s.chart.y1}},
                           {"singular_locus", s.singular_locus},
                           {"notes", s.notes}});
    }
    if (!label.empty() && entries.empty()) {
        throw BadParam("unknown catalog label " + label);
    }
    rep.r["entries"] = entries;
    return rep.finish(out);
}

// ------------------------------------------------------------------ check

void check_halfline(Report& rep, const CatalogEntry& e, const ProjConn& pc,
                    const std::vector<Vec2>& pts) {
    int branch = static_cast<int>(std::lround(e.params.at("branch")));
    ScalarField Y1 = halfline_Y1_closed(branch);
    double worst = 0.0;
    for (const Vec2& p : pts) {
        Jet2d j = eval2(Y1, p.x, p.y);
        worst = std::max(worst, ode_residual_relative(p.y * p.y * j.dyy,
                                                      -0.5 * (p.y - 3.0) * j.dy, 0.5 * j.v));
    }
    rep.check("halfline_ode", worst, 1e-7);

    std::map<std::string, double> qp = e.params;
    qp["quadrature"] = 1.0;
    ProjConn pcq = proj_conn_from_metric(make(e.label, qp).metric);
    double diff = 0.0;
    for (const Vec2& p : pts) {
        diff = std::max(diff, pc_diff(pc, pcq, p.x, p.y));
    }
    rep.check("closed_vs_quadrature", diff, 1e-7);
}

void check_rotational(Report& rep, const CatalogEntry& e, const std::vector<Vec2>& pts) {
    double lambda = e.label == "C.9a" ? e.params.at("lambda") : 0.0;
    ScalarField Xi = rotational_Xi(lambda);
    double worst = 0.0;
    for (const Vec2& p : pts) {
        Jet2d j = eval2(Xi, p.x, p.y);
        worst = std::max(worst,
                         ode_residual_relative((p.y * p.y + 1.0) * j.dyy,
                                               -0.5 * (p.y - 3.0 * lambda) * j.dy, 0.5 * j.v));
    }
    rep.check("rotational_ode", worst, 1e-7);
}

void check_recovered_field(Report& rep) {
    std::vector<SigmaField> basis;
    for (const char* gl : {"dom3.g1", "dom3.g2", "dom3.g3"}) {
        SigmaField s = sigma_from_metric(make(gl).metric);
        s.chart = Chart{0.9, 1.3, 0.15, 0.45};
        basis.push_back(s);
    }
    std::array<double, 3> ev = dom3_eigenvalues();
    double fit = 0.0;
    VectorField2 X = recover_projective_field(basis, {ev[0], ev[1], ev[2]}, 2, &fit);
    rep.check("recovered_field_fit", fit, 1e-6);

    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        SigmaField L = lie_derivative_sigma(basis[k], X);
        for (double x : {0.95, 1.1, 1.25}) {
            for (double y : {0.2, 0.3, 0.4}) {
                double m = 0.0, s = 1e-30;
                for (int i = 0; i < 2; ++i) {
                    for (int j = i; j < 2; ++j) {
                        double lv = eval_value(L.comp(i, j), x, y);
                        double sv = eval_value(basis[k].comp(i, j), x, y);
                        m = std::max(m, std::abs(lv - ev[k] * sv));
                        s = std::max({s, std::abs(sv), std::abs(lv)});
                    }
                }
                worst = std::max(worst, m / s);
            }
        }
    }
    rep.check("recovered_field_eigen", worst, 1e-6);
}

int run_check(const std::string& label, const std::map<std::string, double>& params, int npoints,
              unsigned long seed, const std::string& out) {
    Report rep("check");
    CatalogEntry e = make(label, params);
    rep.r["config"] = {{"label", label}, {"params", e.params}, {"npoints", npoints}, {"seed", seed}};

    ProjConn pc = proj_conn_from_metric(e.metric);
    SigmaField sig = sigma_from_metric(e.metric);
    RngStream rng(seed);
    std::vector<Vec2> pts = sample_points(e.metric, npoints, rng);
    rep.r["points"] = points_json(pts);

    double worst = 0.0;
    for (const Vec2& p : pts) {
        worst = std::max(worst, metrizability_residual(pc, sig, p.x, p.y).max_relative());
    }
    rep.check("metrizability", worst, 1e-9);

    if (e.projective_field) {
        QuadraticForm2 K = killing_from_projective_field(e.metric, *e.projective_field);
        double wf = 0.0, wk = 0.0;
        for (const Vec2& p : pts) {
            wf = std::max(wf,
                          projective_field_residual(e.metric, *e.projective_field, p.x, p.y)
                              .relative());
            wk = std::max(wk, killing_residual(e.metric, K, p.x, p.y).max_relative());
        }
        rep.check("projective_field", wf, 1e-6);
        rep.check("killing_from_field", wk, 1e-9);
    }

    if (e.imag_residual) {
        double wi = 0.0;
        for (const Vec2& p : pts) {
            wi = std::max(wi, e.imag_residual(p.x, p.y));
        }
        rep.check("imaginary_parts", wi, 1e-11);
    }

    if (!e.dini_partner.empty() && params.empty()) {
        CatalogEntry partner = make(e.dini_partner);
        ProjConn pcp = proj_conn_from_metric(partner.metric);
        double wd = 0.0;
        int used = 0;
        for (const Vec2& p : pts) {
            if (!partner.metric.chart.contains(p.x, p.y)) {
                continue;
            }
            wd = std::max(wd, pc_diff(pc, pcp, p.x, p.y));
            ++used;
        }
        if (used > 0) {
            rep.check("shared_connection", wd, 1e-9);
        }
    }

    if (label == "C.8") {
        check_halfline(rep, e, pc, pts);
    }
    if (label == "C.9a" || label == "C.9b") {
        check_rotational(rep, e, pts);
    }
    if (label.rfind("dom3.", 0) == 0) {
        check_recovered_field(rep);
    }
    return rep.finish(out);
}

// ---------------------------------------------------- geodesic / quotient

struct RunTarget {
    Metric2 metric;
    ProjConn pc;
    std::optional<VectorField2> field;
    bool superintegrable = false;
};

RunTarget resolve_target(const std::string& label, const std::map<std::string, double>& params) {
    RunTarget t;
    if (label == "superintegrable") {
        if (!params.empty()) {
            throw BadParam("the built-in superintegrable model takes no catalog parameters");
        }
        t.metric = superintegrable_metric();
        t.pc = superintegrable_pc();
        t.superintegrable = true;
        return t;
    }
    CatalogEntry e = make(label, params);
    t.metric = e.metric;
    t.pc = proj_conn_from_metric(e.metric);
    t.field = e.projective_field;
    return t;
}

int run_geodesic(const std::string& label, const std::map<std::string, double>& params,
                 const std::vector<double>& ic, double t1, int samples, double gate,
                 const std::string& out, bool plot) {
    Report rep("geodesic");
    RunTarget tg = resolve_target(label, params);
    rep.r["config"] = {{"label", label}, {"ic", ic}, {"t1", t1},
                       {"samples", samples}, {"gate", gate}, {"out", out}};

    if (!tg.metric.chart.contains(ic[0], ic[1]) ||
        (tg.metric.singular && tg.metric.singular(ic[0], ic[1]))) {
        throw BadParam("initial point outside the chart of " + label);
    }

    std::vector<IntegralMonitor> mons;
    mons.push_back(energy_monitor(tg.metric));
    if (tg.field) {
        mons.push_back(
            killing_monitor("I_X", killing_from_projective_field(tg.metric, *tg.field)));
    }

    GeodesicState s0{0.0, ic[0], ic[1], ic[2], ic[3]};
    std::vector<GeodesicState> path;
    bool truncated = false;
    double reached = t1;
    try {
        path = integrate_geodesic(tg.metric, s0, t1);
    } catch (const LeftChart& lc) {
        truncated = true;
        for (double frac : {0.999, 0.99, 0.9}) {
            try {
                reached = lc.at * frac;
                path = integrate_geodesic(tg.metric, s0, reached);
                break;
            } catch (const LeftChart&) {
            }
        }
        if (path.empty()) {
            throw;
        }
    }
    rep.r["truncated"] = truncated;
    rep.r["reached"] = reached;

    // quantities that vanish along the whole run are gated on absolute
    // drift: a relative measure would divide roundoff by roundoff
    json drifts = json::array();
    std::vector<DriftReport> dr = monitor(path, mons);
    for (std::size_t i = 0; i < dr.size(); ++i) {
        double vmax = 0.0;
        for (const GeodesicState& s : path) {
            vmax = std::max(vmax, std::abs(mons[i].on_geodesic(s)));
        }
        double scale = std::max(std::abs(dr[i].reference), vmax);
        double gated = scale > 1e-9 ? dr[i].max_abs / scale : dr[i].max_abs;
        drifts.push_back({{"name", dr[i].name}, {"reference", dr[i].reference},
                          {"max_abs", dr[i].max_abs}, {"max_rel", dr[i].max_rel},
                          {"drift", gated}});
        rep.check(dr[i].name + "_drift", gated, gate);
    }
    rep.r["monitors"] = drifts;

    if (!out.empty()) {
        std::vector<GeodesicState> grid = resample(tg.metric, path, samples);
        std::string header = "t,x,y,xd,yd,H";
        for (std::size_t i = 1; i < mons.size(); ++i) {
            header += "," + mons[i].name;
        }
        std::vector<std::vector<double>> rows;
        for (const GeodesicState& s : grid) {
            std::vector<double> row{s.t, s.x, s.y, s.xd, s.yd};
            for (const IntegralMonitor& m : mons) {
                row.push_back(m.on_geodesic(s));
            }
            rows.push_back(row);
        }
        write_csv(out, header, rows);
        if (plot) {
            write_plot_script(out, 2, 3);
        }
    }
    return rep.finish("");
}

int run_quotient(const std::string& label, const std::map<std::string, double>& params,
                 const std::vector<double>& ic, double x1, int samples, double gate,
                 const std::string& out, bool plot) {
    Report rep("quotient");
    RunTarget tg = resolve_target(label, params);
    rep.r["config"] = {{"label", label}, {"ic", ic}, {"x1", x1},
                       {"samples", samples}, {"gate", gate}, {"out", out}};

    if (!tg.pc.chart.contains(ic[0], ic[1]) ||
        (tg.pc.singular && tg.pc.singular(ic[0], ic[1]))) {
        throw BadParam("initial point outside the chart of " + label);
    }

    std::vector<IntegralMonitor> mons;
    if (tg.superintegrable) {
        IntegralMonitor m1;
        m1.name = "I1";
        m1.on_quotient = [](const QuotientState& q) { return supint_I1(q); };
        IntegralMonitor m2;
        m2.name = "I2";
        m2.on_quotient = [](const QuotientState& q) { return supint_I2(q); };
        mons.push_back(m1);
        mons.push_back(m2);
    } else if (tg.field) {
        mons.push_back(rational_monitor(
            "f", killing_from_projective_field(tg.metric, *tg.field), tg.metric));
    }

    QuotientState q0{ic[0], ic[1], ic[2]};
    std::vector<QuotientState> path;
    bool truncated = false;
    double reached = x1;
    try {
        path = integrate_quotient(tg.pc, q0, x1);
    } catch (const LeftChart& lc) {
        truncated = true;
        for (double frac : {0.999, 0.99, 0.9}) {
            try {
                reached = ic[0] + (lc.at - ic[0]) * frac;
                path = integrate_quotient(tg.pc, q0, reached);
                break;
            } catch (const LeftChart&) {
            }
        }
        if (path.empty()) {
            throw;
        }
    }
    rep.r["truncated"] = truncated;
    rep.r["reached"] = reached;

    json drifts = json::array();
    std::vector<DriftReport> dr = monitor(path, mons);
    for (std::size_t i = 0; i < dr.size(); ++i) {
        double vmax = 0.0;
        for (const QuotientState& q : path) {
            vmax = std::max(vmax, std::abs(mons[i].on_quotient(q)));
        }
        double scale = std::max(std::abs(dr[i].reference), vmax);
        double gated = scale > 1e-9 ? dr[i].max_abs / scale : dr[i].max_abs;
        drifts.push_back({{"name", dr[i].name}, {"reference", dr[i].reference},
                          {"max_abs", dr[i].max_abs}, {"max_rel", dr[i].max_rel},
                          {"drift", gated}});
        rep.check(dr[i].name + "_drift", gated, gate);
    }
    rep.r["monitors"] = drifts;

    if (!out.empty()) {
        std::vector<QuotientState> grid = resample(tg.pc, path, samples);
        std::string header = "x,y,yx";
        for (const IntegralMonitor& m : mons) {
            header += "," + m.name;
        }
        std::vector<std::vector<double>> rows;
        for (const QuotientState& q : grid) {
            std::vector<double> row{q.x, q.y, q.yx};
            for (const IntegralMonitor& m : mons) {
                row.push_back(m.on_quotient(q));
            }
            rows.push_back(row);
        }
        write_csv(out, header, rows);
        if (plot) {
            write_plot_script(out, 1, 2);
        }
    }
    return rep.finish("");
}

// -------------------------------------------------------- superintegrable

int run_superintegrable(double theta, double phi, double c1, double c2, double k, double x0,
                        double x1, double t1, const std::string& branch, int samples,
                        unsigned long seed, const std::string& out, bool plot) {
    Report rep("superintegrable");
    rep.r["config"] = {{"theta", theta}, {"phi", phi},   {"c1", c1},          {"c2", c2},
                       {"k", k},         {"x0", x0},     {"x1", x1},          {"t1", t1},
                       {"branch", branch}, {"samples", samples}, {"seed", seed}, {"out", out}};

    // the six axis points of the parameter sphere are homothetic and admit
    // no trajectory family; dom3_parametrize names the ray
    dom3_parametrize(0.0, theta, phi);

    std::array<SigmaField, 3> sig = spherical_sigma(theta, phi);
    RngStream rng(seed);
    json ranks = json::array();
    int min_rank = 3;
    for (int i = 0; i < 10; ++i) {
        for (int tries = 0;; ++tries) {
            Vec2 p = sample_chart_point(sig[0].chart, nullptr, rng);
            Vec2 mom{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            if (std::abs(mom.x) + std::abs(mom.y) < 0.2) {
                continue;
            }
            try {
                int rk = independence_rank(sig, p, mom);
                ranks.push_back({{"x", p.x}, {"y", p.y}, {"px", mom.x}, {"py", mom.y},
                                 {"rank", rk}});
                min_rank = std::min(min_rank, rk);
                break;
            } catch (const SingularMetric&) {
                if (tries > 50) {
                    throw;
                }
            }
        }
    }
    rep.r["rank_samples"] = ranks;
    rep.check("independence_rank_defect", static_cast<double>(3 - min_rank), 0.5);

    TrajectoryConstants c{c1, c2, k};
    int n = std::max(samples, 2);
    json curve = json::array();
    std::vector<std::vector<double>> curve_rows;
    double wlo = 0.0, whi = 0.0;
    bool have_window = false;
    for (int i = 0; i <= n; ++i) {
        double x = x0 + (x1 - x0) * i / n;
        double yp = std::nan(""), ym = std::nan("");
        bool any = false;
        try {
            yp = trajectory_solve(c, x, Branch::Plus);
            any = true;
        } catch (const Error&) {
        }
        try {
            ym = trajectory_solve(c, x, Branch::Minus);
            any = true;
        } catch (const Error&) {
        }
        if (any) {
            if (!have_window) {
                wlo = whi = x;
                have_window = true;
            } else {
                wlo = std::min(wlo, x);
                whi = std::max(whi, x);
            }
        }
        curve.push_back({x, std::isnan(yp) ? json(nullptr) : json(yp),
                         std::isnan(ym) ? json(nullptr) : json(ym)});
        curve_rows.push_back({x, yp, ym});
    }
    if (!have_window) {
        throw BadParam("constants admit no real trajectory on the requested x window");
    }
    rep.r["curve"] = curve;
    rep.r["real_window"] = {wlo, whi};

    Branch br = branch == "minus" ? Branch::Minus : Branch::Plus;
    auto startable = [&](double x, double& yout) {
        if (k * (2.0 * x - c1) <= 0.0) {
            return false;
        }
        try {
            yout = trajectory_solve(c, x, br);
        } catch (const Error&) {
            return false;
        }
        return true;
    };
    double xs = x0, ys = 0.0;
    if (!startable(xs, ys)) {
        bool found = false;
        for (int i = 0; i <= n && !found; ++i) {
            xs = wlo + (whi - wlo) * i / n;
            found = startable(xs, ys);
        }
        if (!found) {
            throw BadParam("no admissible start: k (2x - c1) <= 0 across the real window");
        }
    }
    rep.r["start"] = {xs, ys};

    std::vector<ReparamState> run;
    bool truncated = false;
    double reached = t1;
    try {
        run = reparametrize(c, xs, ys, t1, +1, samples);
    } catch (const LeftChart& lc) {
        truncated = true;
        for (double frac : {0.999, 0.99, 0.9}) {
            try {
                reached = lc.at * frac;
                run = reparametrize(c, xs, ys, reached, +1, samples);
                break;
            } catch (const LeftChart&) {
            }
        }
    }
    rep.r["truncated"] = truncated;
    rep.r["reached"] = reached;
    if (run.empty()) {
        rep.check("reparametrize_run", 1.0, 0.5);
        return rep.finish("");
    }

    // the quotient integrals must sit at their prescribed levels all along
    // the reparametrized curve
    double d1 = 0.0, d2 = 0.0;
    for (const ReparamState& s : run) {
        double den = 2.0 * s.x - c1;
        if (std::abs(den) < 1e-8 * std::max(1.0, std::abs(s.x))) {
            continue;
        }
        QuotientState q{s.x, s.y, (s.x * s.x + s.y) / den};
        if (std::abs(q.yx) < 1e-12) {
            continue;
        }
        d1 = std::max(d1, std::abs(supint_I1(q) - c1) / std::max(1.0, std::abs(c1)));
        d2 = std::max(d2, std::abs(supint_I2(q) - c2) / std::max(1.0, std::abs(c2)));
    }
    rep.check("I1_recovered", d1, 1e-6);
    rep.check("I2_recovered", d2, 1e-6);

    if (!out.empty()) {
        std::vector<std::vector<double>> rows;
        for (const ReparamState& s : run) {
            rows.push_back({s.t, s.x, s.y});
        }
        write_csv(out, "t,x,y", rows);
        write_csv(out + ".curve.csv", "x,y_plus,y_minus", curve_rows);
        if (plot) {
            write_plot_script(out, 2, 3,
                              "replot '" + out + ".curve.csv' using 1:2 with lines\n");
        }
    }
    return rep.finish("");
}

// --------------------------------------------------------------- classify

int run_classify(const std::string& mstr, const std::string& label, const std::string& out) {
    Report rep("classify");
    rep.r["config"] = {{"m", mstr}, {"label", label}};
    if (!mstr.empty() && !label.empty()) {
        throw BadParam("give either --m or --label, not both");
    }
    if (!mstr.empty()) {
        std::array<double, 4> v{};
        std::size_t pos = 0;
        std::string rest = mstr;
        for (int i = 0; i < 4; ++i) {
            try {
                v[i] = std::stod(rest, &pos);
            } catch (const std::exception&) {
                throw BadParam("--m expects four comma-separated numbers");
            }
            rest = rest.substr(pos);
            if (i < 3) {
                if (rest.empty() || rest[0] != ',') {
                    throw BadParam("--m expects four comma-separated numbers");
                }
                rest = rest.substr(1);
            }
        }
        if (!rest.empty()) {
            throw BadParam("--m expects four comma-separated numbers");
        }
        LieAction a = classify(Mat2{v[0], v[1], v[2], v[3]});
        static const char* kinds[] = {"", "I", "II", "III"};
        rep.r["case"] = kinds[a.kind];
        rep.r["lambda"] = a.lambda;
        rep.r["scale"] = a.scale;
        rep.r["component_count"] = component_count(a);
        rep.r["normal_form"] = {a.N.a, a.N.b, a.N.c, a.N.d};
        if (a.kind == 1) {
            rep.r["coordinates"] =
                "u = u1 / |u2|^lambda, s = ln|u2|; one component per open quadrant";
        } else if (a.kind == 2) {
            rep.r["coordinates"] =
                "u = e^{u2/u1} / u1, s = ln|u1|; one component per half-plane u1 <> 0";
        } else {
            rep.r["coordinates"] =
                "u = sqrt(u1^2 + u2^2) e^{-lambda s}, s = atan2(u2, u1) in [0, 2pi)";
            if (a.lambda == 0.0) {
                rep.r["orbit_space"] = "cylinder S^1 x R; u is a single-valued flow invariant";
            } else {
                rep.r["orbit_space"] =
                    "orbits identified modulo the winding lattice: ln(u'/u) in 2 pi lambda Z";
            }
        }
        return rep.finish(out);
    }
    if (!label.empty()) {
        if (label.rfind("dom3.", 0) != 0) {
            throw BadParam("classification by label covers the dom3.* family only");
        }
        make(label);  // validates the label
        std::array<double, 3> ev = dom3_eigenvalues();
        rep.r["eigenvalues"] = {ev[0], ev[1], ev[2]};
        rep.r["generator"] = "X = 2 x d_x + y d_y";
        rep.r["parametrization"] =
            "(u1, u2, u3) = (e^{-5r/3} sin th cos ph, e^{-2r/3} sin th sin ph, "
            "e^{4r/3} cos th); the six axis points are homothetic and rejected";
        return rep.finish(out);
    }
    throw BadParam("classify needs --m a,b,c,d or --label");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projective connections with one symmetry: catalog, checks, runs"};
    app.require_subcommand(1);

    std::string cat_label, cat_out;
    CLI::App* cat = app.add_subcommand("catalog", "list catalog entries and their schemas");
    cat->add_option("--label", cat_label, "restrict to one label");
    cat->add_option("--out", cat_out, "write JSON here instead of stdout");

    std::string chk_label, chk_out;
    int chk_npoints = 100;
    unsigned long chk_seed = default_seed();
    ParamFlags chk_params;
    CLI::App* chk = app.add_subcommand("check", "run the residual suites on a catalog entry");
    chk->add_option("--label", chk_label, "catalog label")->required();
    chk->add_option("--npoints", chk_npoints, "sample count")->check(CLI::PositiveNumber);
    chk->add_option("--seed", chk_seed, "sampling seed");
    chk->add_option("--out", chk_out, "write JSON here instead of stdout");
    chk_params.attach(chk);

    std::string geo_label, geo_out;
    std::vector<double> geo_ic;
    double geo_t1 = 10.0, geo_gate = 1e-7;
    int geo_samples = 200;
    bool geo_plot = false;
    ParamFlags geo_params;
    CLI::App* geo = app.add_subcommand("geodesic", "integrate a geodesic and monitor integrals");
    geo->add_option("--label", geo_label, "catalog label or 'superintegrable'")->required();
    geo->add_option("--ic", geo_ic, "x0 y0 xd0 yd0")->expected(4)->required();
    geo->add_option("--t1", geo_t1, "integration time");
    geo->add_option("--samples", geo_samples, "CSV grid size")->check(CLI::PositiveNumber);
    geo->add_option("--gate", geo_gate, "relative drift gate");
    geo->add_option("--out", geo_out, "CSV output path");
    geo->add_flag("--emit-plot-script", geo_plot, "write a gnuplot script next to the CSV");
    geo_params.attach(geo);

    std::string quo_label, quo_out;
    std::vector<double> quo_ic;
    double quo_x1 = 0.0, quo_gate = 1e-7;
    int quo_samples = 200;
    bool quo_plot = false;
    ParamFlags quo_params;
    CLI::App* quo = app.add_subcommand("quotient", "integrate the quotient ODE y(x)");
    quo->add_option("--label", quo_label, "catalog label or 'superintegrable'")->required();
    quo->add_option("--ic", quo_ic, "x0 y0 yx0")->expected(3)->required();
    quo->add_option("--x1", quo_x1, "final abscissa")->required();
    quo->add_option("--samples", quo_samples, "CSV grid size")->check(CLI::PositiveNumber);
    quo->add_option("--gate", quo_gate, "relative drift gate");
    quo->add_option("--out", quo_out, "CSV output path");
    quo->add_flag("--emit-plot-script", quo_plot, "write a gnuplot script next to the CSV");
    quo_params.attach(quo);

    double sup_theta = 0.0, sup_phi = 0.0, sup_c1 = 0.0, sup_c2 = 0.0, sup_k = 1.0;
    double sup_x0 = 0.5, sup_x1 = 3.0, sup_t1 = 4.0;
    int sup_samples = 200;
    unsigned long sup_seed = default_seed();
    std::string sup_branch = "plus", sup_out;
    bool sup_plot = false;
    CLI::App* sup = app.add_subcommand(
        "superintegrable", "trajectories of the degree-3 family at a parameter-sphere point");
    sup->add_option("--theta", sup_theta, "parameter sphere colatitude")->required();
    sup->add_option("--phi", sup_phi, "parameter sphere longitude")->required();
    sup->add_option("--c1", sup_c1, "level of the first quotient integral");
    sup->add_option("--c2", sup_c2, "level of the second quotient integral");
    sup->add_option("--k", sup_k, "Hamiltonian level");
    sup->add_option("--x0", sup_x0, "curve window start");
    sup->add_option("--x1", sup_x1, "curve window end");
    sup->add_option("--t1", sup_t1, "parametrized run length");
    sup->add_option("--branch", sup_branch, "curve sheet")
        ->check(CLI::IsMember({"plus", "minus"}));
    sup->add_option("--samples", sup_samples, "grid size")->check(CLI::PositiveNumber);
    sup->add_option("--seed", sup_seed, "rank sampling seed");
    sup->add_option("--out", sup_out, "CSV output path (curve goes to <out>.curve.csv)");
    sup->add_flag("--emit-plot-script", sup_plot, "write a gnuplot script next to the CSV");

    std::string cls_m, cls_label, cls_out;
    CLI::App* cls = app.add_subcommand("classify", "normal form of a symmetry action");
    cls->add_option("--m", cls_m, "matrix entries a,b,c,d of the action on coefficients");
    cls->add_option("--label", cls_label, "catalog label with higher-dimensional data");
    cls->add_option("--out", cls_out, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cat->parsed()) {
            return run_catalog(cat_label, cat_out);
        }
        if (chk->parsed()) {
            return run_check(chk_label, chk_params.collect(), chk_npoints, chk_seed, chk_out);
        }
        if (geo->parsed()) {
            return run_geodesic(geo_label, geo_params.collect(), geo_ic, geo_t1, geo_samples,
                                geo_gate, geo_out, geo_plot);
        }
        if (quo->parsed()) {
            return run_quotient(quo_label, quo_params.collect(), quo_ic, quo_x1, quo_samples,
                                quo_gate, quo_out, quo_plot);
        }
        if (sup->parsed()) {
            return run_superintegrable(sup_theta, sup_phi, sup_c1, sup_c2, sup_k, sup_x0,
                                       sup_x1, sup_t1, sup_branch, sup_samples, sup_seed,
                                       sup_out, sup_plot);
        }
        if (cls->parsed()) {
            return run_classify(cls_m, cls_label, cls_out);
        }
    } catch (const BadParam& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ExceptionalPoint& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroAction& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const OnEigenspace& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
