#include "projconn/geometry.hpp"

#include <cmath>

namespace projconn {

namespace {

// Derived fields built from christoffel symbols differentiate their inputs
// internally, which is only valid at coordinate seeds.
void require_coord_seeds(const Jet2d& x, const Jet2d& y) {
    if (x.dx != 1.0 || x.dy != 0.0 || x.dxx != 0.0 || x.dxy != 0.0 || x.dyy != 0.0 ||
        y.dx != 0.0 || y.dy != 1.0 || y.dxx != 0.0 || y.dxy != 0.0 || y.dyy != 0.0) {
        throw Error("derived field must be evaluated at coordinate seeds");
    }
}

struct MetricJets2 {
    Jet2d g[2][2];
};
struct MetricJets4 {
    Jet4d g[2][2];
};

MetricJets2 eval_metric2(const Metric2& m, double x, double y) {
    MetricJets2 r;
    r.g[0][0] = eval2(m.g11, x, y);
    r.g[0][1] = r.g[1][0] = eval2(m.g12, x, y);
    r.g[1][1] = eval2(m.g22, x, y);
    return r;
}

MetricJets4 eval_metric4(const Metric2& m, double x, double y) {
    MetricJets4 r;
    r.g[0][0] = eval4(m.g11, x, y);
    r.g[0][1] = r.g[1][0] = eval4(m.g12, x, y);
    r.g[1][1] = eval4(m.g22, x, y);
    return r;
}

std::array<double, 4> proj_conn_values_from(const Christoffel2& c) {
    return {-c.G[1][0][0], c.G[0][0][0] - 2.0 * c.G[1][0][1], -c.G[1][1][1] + 2.0 * c.G[0][0][1],
            c.G[0][1][1]};
}

}  // namespace

Christoffel2 christoffel(const Metric2& g, double x, double y) {
    MetricJets2 m = eval_metric2(g, x, y);
    Christoffel2 c;
    c.G = christoffel_from_jets(m.g[0][0], m.g[0][1], m.g[1][1]);
    return c;
}

Christoffel2Jets christoffel_jets(const Metric2& g, double x, double y) {
    MetricJets4 m = eval_metric4(g, x, y);
    Christoffel2Jets c;
    c.G = christoffel_from_jets(m.g[0][0], m.g[0][1], m.g[1][1]);
    return c;
}

ProjConn proj_conn_from_metric(const Metric2& g) {
    ProjConn pc;
    pc.chart = g.chart;
    pc.singular = g.singular;
    for (int k = 0; k < 4; ++k) {
        pc.f[k].f2 = [g, k](const Jet2d& x, const Jet2d& y) {
            require_coord_seeds(x, y);
            Christoffel2Jets c = christoffel_jets(g, x.v, y.v);
            switch (k) {
                case 0:
                    return -c.G[1][0][0];
                case 1:
                    return c.G[0][0][0] - 2.0 * c.G[1][0][1];
                case 2:
                    return -c.G[1][1][1] + 2.0 * c.G[0][0][1];
                default:
                    return c.G[0][1][1];
            }
        };
    }
    pc.values = [g](double x, double y) { return proj_conn_values_from(christoffel(g, x, y)); };
    return pc;
}

SigmaField sigma_from_metric(const Metric2& g) {
    SigmaField s;
    s.chart = g.chart;
    auto make = [&g](int idx) {
        ScalarField f;
        f.f2 = [g, idx](const Jet2d& x, const Jet2d& y) {
            auto r = sigma_from_metric_jets(g.g11.f2(x, y), g.g12.f2(x, y), g.g22.f2(x, y));
            return r[idx];
        };
        if (g.g11.has_f4() && g.g12.has_f4() && g.g22.has_f4()) {
            f.f4 = [g, idx](const Jet4d& x, const Jet4d& y) {
                auto r = sigma_from_metric_jets(g.g11.f4(x, y), g.g12.f4(x, y), g.g22.f4(x, y));
                return r[idx];
            };
        }
        return f;
    };
    s.s11 = make(0);
    s.s12 = make(1);
    s.s22 = make(2);
    return s;
}

Metric2 metric_from_sigma(const SigmaField& s) {
    Metric2 m;
    m.chart = s.chart;
    m.label = "from_sigma";
    auto make = [&s](int idx) {
        ScalarField f;
        f.f2 = [s, idx](const Jet2d& x, const Jet2d& y) {
            auto r = metric_from_sigma_jets(s.s11.f2(x, y), s.s12.f2(x, y), s.s22.f2(x, y));
            return r[idx];
        };
        if (s.s11.has_f4() && s.s12.has_f4() && s.s22.has_f4()) {
            f.f4 = [s, idx](const Jet4d& x, const Jet4d& y) {
                auto r = metric_from_sigma_jets(s.s11.f4(x, y), s.s12.f4(x, y), s.s22.f4(x, y));
                return r[idx];
            };
        }
        return f;
    };
    m.g11 = make(0);
    m.g12 = make(1);
    m.g22 = make(2);
    m.singular = [s](double x, double y) {
        Jet2d a = s.s11.f2(jet_x(x), jet_y(y));
        Jet2d b = s.s12.f2(jet_x(x), jet_y(y));
        Jet2d c = s.s22.f2(jet_x(x), jet_y(y));
        double det = a.v * c.v - b.v * b.v;
        double scale = std::max({std::abs(a.v), std::abs(b.v), std::abs(c.v)});
        return std::abs(det) <= 1e-10 * scale * scale;
    };
    return m;
}

Residual4 metrizability_residual(const ProjConn& pc, const SigmaField& s, double x, double y) {
    Jet2d s11 = eval2(s.s11, x, y);
    Jet2d s12 = eval2(s.s12, x, y);
    Jet2d s22 = eval2(s.s22, x, y);
    std::array<double, 4> f{};
    if (pc.values) {
        f = pc.values(x, y);
    } else {
        for (int k = 0; k < 4; ++k) {
            f[k] = eval2(pc.f[k], x, y).v;
        }
    }
    auto combine = [](std::initializer_list<double> terms, double& r, double& sc) {
        r = 0.0;
        sc = 0.0;
        for (double t : terms) {
            r += t;
            sc = std::max(sc, std::abs(t));
        }
    };
    Residual4 out;
    combine({s22.dx, -(2.0 / 3.0) * f[1] * s22.v, -2.0 * f[0] * s12.v}, out.r[0], out.scale[0]);
    combine({s22.dy, -2.0 * s12.dx, -(4.0 / 3.0) * f[2] * s22.v, -(2.0 / 3.0) * f[1] * s12.v,
             2.0 * f[0] * s11.v},
            out.r[1], out.scale[1]);
    combine({-2.0 * s12.dy, s11.dx, -2.0 * f[3] * s22.v, (2.0 / 3.0) * f[2] * s12.v,
             (4.0 / 3.0) * f[1] * s11.v},
            out.r[2], out.scale[2]);
    combine({s11.dy, 2.0 * f[3] * s12.v, (2.0 / 3.0) * f[2] * s11.v}, out.r[3], out.scale[3]);
    return out;
}

namespace {

template <class JT>
std::array<JT, 4> benenti_jets(const JT& a11, const JT& a12, const JT& a22, const JT& b11,
                               const JT& b12, const JT& b22) {
    JT adet = a11 * a22 - a12 * a12;
    JT bdet = b11 * b22 - b12 * b12;
    if (std::abs(value_of(adet)) == 0.0 || std::abs(value_of(bdet)) == 0.0) {
        throw SingularMetric("benenti: degenerate metric");
    }
    JT c = pow(abs(bdet / adet), 1.0 / 3.0);
    // L = c * gbar^{-1} g
    JT L11 = c * (b22 * a11 - b12 * a12) / bdet;
    JT L12 = c * (b22 * a12 - b12 * a22) / bdet;
    JT L21 = c * (-b12 * a11 + b11 * a12) / bdet;
    JT L22 = c * (-b12 * a12 + b11 * a22) / bdet;
    return {L11, L12, L21, L22};
}

}  // namespace

Benenti2 benenti(const Metric2& g, const Metric2& gbar) {
    Benenti2 L;
    L.chart = g.chart;
    auto make = [g, gbar](int idx) {
        ScalarField f;
        f.f2 = [g, gbar, idx](const Jet2d& x, const Jet2d& y) {
            auto r = benenti_jets(g.g11.f2(x, y), g.g12.f2(x, y), g.g22.f2(x, y),
                                  gbar.g11.f2(x, y), gbar.g12.f2(x, y), gbar.g22.f2(x, y));
            return r[idx];
        };
        return f;
    };
    L.L11 = make(0);
    L.L12 = make(1);
    L.L21 = make(2);
    L.L22 = make(3);
    return L;
}

Mat2 benenti_at(const Metric2& g, const Metric2& gbar, double x, double y) {
    auto r = benenti_jets(eval2(g.g11, x, y), eval2(g.g12, x, y), eval2(g.g22, x, y),
                          eval2(gbar.g11, x, y), eval2(gbar.g12, x, y), eval2(gbar.g22, x, y));
    return {r[0].v, r[1].v, r[2].v, r[3].v};
}

Residual4 killing_residual(const Metric2& g, const QuadraticForm2& K, double x, double y) {
    Christoffel2 c = christoffel(g, x, y);
    Jet2d k[2][2];
    k[0][0] = eval2(K.q11, x, y);
    k[0][1] = k[1][0] = eval2(K.q12, x, y);
    k[1][1] = eval2(K.q22, x, y);
    double dk[2][2][2];  // dk[l][i][j] = d_l K_ij
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            dk[0][i][j] = k[i][j].dx;
            dk[1][i][j] = k[i][j].dy;
        }
    }
    double cd[2][2][2];     // nabla_k K_ij
    double cdsc[2][2][2];   // scale per component
    for (int kk = 0; kk < 2; ++kk) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                double t = dk[kk][i][j];
                double sc = std::abs(t);
                for (int l = 0; l < 2; ++l) {
                    double u = -c.G[l][kk][i] * k[l][j].v;
                    double w = -c.G[l][kk][j] * k[i][l].v;
                    t += u + w;
                    sc = std::max({sc, std::abs(u), std::abs(w)});
                }
                cd[kk][i][j] = t;
                cdsc[kk][i][j] = sc;
            }
        }
    }
    Residual4 out;
    out.r[0] = cd[0][0][0];
    out.scale[0] = cdsc[0][0][0];
    out.r[1] = (cd[1][0][0] + 2.0 * cd[0][0][1]) / 3.0;
    out.scale[1] = std::max(cdsc[1][0][0], cdsc[0][0][1]);
    out.r[2] = (cd[0][1][1] + 2.0 * cd[1][0][1]) / 3.0;
    out.scale[2] = std::max(cdsc[0][1][1], cdsc[1][0][1]);
    out.r[3] = cd[1][1][1];
    out.scale[3] = cdsc[1][1][1];
    return out;
}

QuadraticForm2 killing_from_projective_field(const Metric2& g, const VectorField2& X) {
    QuadraticForm2 h;
    h.chart = g.chart;
    auto make = [g, X](int i, int j) {
        ScalarField f;
        f.f2 = [g, X, i, j](const Jet2d& xs, const Jet2d& ys) {
            require_coord_seeds(xs, ys);
            double x = xs.v, y = ys.v;
            MetricJets4 m4 = eval_metric4(g, x, y);
            auto Gj = christoffel_from_jets(m4.g[0][0], m4.g[0][1], m4.g[1][1]);
            Jet4d xx1 = eval4(X.X1, x, y);
            Jet4d xx2 = eval4(X.X2, x, y);
            Jet2d Xa[2] = {xx1.v, xx2.v};
            Jet2d dX[2][2];  // dX[a][b] = d_b X^a
            dX[0][0] = xx1.dx;
            dX[0][1] = xx1.dy;
            dX[1][0] = xx2.dx;
            dX[1][1] = xx2.dy;
            Jet2d gm[2][2];
            Jet2d dg[2][2][2];  // dg[l][a][b]
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    gm[a][b] = m4.g[a][b].v;
                    dg[0][a][b] = m4.g[a][b].dx;
                    dg[1][a][b] = m4.g[a][b].dy;
                }
            }
            Jet2d sym(0.0);
            for (int a = 0; a < 2; ++a) {
                Jet2d gam(0.0);
                for (int kk = 0; kk < 2; ++kk) {
                    gam += gm[a][kk] * Gj[kk][j][i];
                }
                sym += dX[a][j] * gm[a][i] + Xa[a] * dg[j][a][i] + dX[a][i] * gm[a][j] +
                       Xa[a] * dg[i][a][j] - 2.0 * Xa[a] * gam;
            }
            sym = 0.5 * sym;
            Jet2d div = dX[0][0] + dX[1][1];
            for (int jj = 0; jj < 2; ++jj) {
                div += Xa[jj] * (Gj[0][0][jj] + Gj[1][1][jj]);
            }
            return sym - (2.0 / 3.0) * div * gm[i][j];
        };
        return f;
    };
    h.q11 = make(0, 0);
    h.q12 = make(0, 1);
    h.q22 = make(1, 1);
    return h;
}

namespace {

template <class JT>
std::array<JT, 3> topalov_jets(const JT& a11, const JT& a12, const JT& a22, const JT& b11,
                               const JT& b12, const JT& b22) {
    JT adet = a11 * a22 - a12 * a12;
    JT bdet = b11 * b22 - b12 * b12;
    JT c = pow(abs(adet / bdet), 2.0 / 3.0);
    return {c * b11, c * b12, c * b22};
}

}  // namespace

QuadraticForm2 topalov_killing(const Metric2& g, const Metric2& gbar) {
    QuadraticForm2 K;
    K.chart = g.chart;
    auto make = [g, gbar](int idx) {
        ScalarField f;
        f.f2 = [g, gbar, idx](const Jet2d& x, const Jet2d& y) {
            auto r = topalov_jets(g.g11.f2(x, y), g.g12.f2(x, y), g.g22.f2(x, y),
                                  gbar.g11.f2(x, y), gbar.g12.f2(x, y), gbar.g22.f2(x, y));
            return r[idx];
        };
        if (g.g11.has_f4() && gbar.g11.has_f4() && g.g12.has_f4() && gbar.g12.has_f4() &&
            g.g22.has_f4() && gbar.g22.has_f4()) {
            f.f4 = [g, gbar, idx](const Jet4d& x, const Jet4d& y) {
                auto r = topalov_jets(g.g11.f4(x, y), g.g12.f4(x, y), g.g22.f4(x, y),
                                      gbar.g11.f4(x, y), gbar.g12.f4(x, y), gbar.g22.f4(x, y));
                return r[idx];
            };
        }
        return f;
    };
    K.q11 = make(0);
    K.q12 = make(1);
    K.q22 = make(2);
    return K;
}

Metric2 metric_from_killing(const Metric2& g, const QuadraticForm2& K) {
    Metric2 m;
    m.chart = g.chart;
    m.singular = g.singular;
    m.label = g.label.empty() ? "from_killing" : g.label + ".from_killing";
    auto make = [g, K](int idx) {
        ScalarField f;
        f.f2 = [g, K, idx](const Jet2d& x, const Jet2d& y) {
            Jet2d a11 = g.g11.f2(x, y), a12 = g.g12.f2(x, y), a22 = g.g22.f2(x, y);
            Jet2d k11 = K.q11.f2(x, y), k12 = K.q12.f2(x, y), k22 = K.q22.f2(x, y);
            Jet2d adet = a11 * a22 - a12 * a12;
            Jet2d kdet = k11 * k22 - k12 * k12;
            Jet2d r = adet / kdet;
            Jet2d c = r * r;
            Jet2d k = (idx == 0) ? k11 : (idx == 1) ? k12 : k22;
            return c * k;
        };
        return f;
    };
    m.g11 = make(0);
    m.g12 = make(1);
    m.g22 = make(2);
    return m;
}

double rational_integral(const QuadraticForm2& h, const Metric2& g, double x, double y, double yx) {
    double h11 = eval_value(h.q11, x, y);
    double h12 = eval_value(h.q12, x, y);
    double h22 = eval_value(h.q22, x, y);
    double g11 = eval_value(g.g11, x, y);
    double g12 = eval_value(g.g12, x, y);
    double g22 = eval_value(g.g22, x, y);
    double den = g11 + 2.0 * g12 * yx + g22 * yx * yx;
    double scale = std::max({std::abs(g11), std::abs(2.0 * g12 * yx), std::abs(g22 * yx * yx)});
    if (std::abs(den) <= 1e-10 * std::max(scale, 1e-30)) {
        throw NullDirection("rational_integral: direction is null for the metric");
    }
    return (h11 + 2.0 * h12 * yx + h22 * yx * yx) / den;
}

ProjFieldResidual projective_field_residual(const Metric2& g, const VectorField2& X, double x,
                                            double y) {
    Christoffel2Jets cj = christoffel_jets(g, x, y);
    Jet2d xj1 = eval2(X.X1, x, y);
    Jet2d xj2 = eval2(X.X2, x, y);
    double Xa[2] = {xj1.v, xj2.v};
    double dX[2][2] = {{xj1.dx, xj1.dy}, {xj2.dx, xj2.dy}};
    double ddX[2][2][2];  // ddX[a][j][k] = d_j d_k X^a
    ddX[0][0][0] = xj1.dxx;
    ddX[0][0][1] = ddX[0][1][0] = xj1.dxy;
    ddX[0][1][1] = xj1.dyy;
    ddX[1][0][0] = xj2.dxx;
    ddX[1][0][1] = ddX[1][1][0] = xj2.dxy;
    ddX[1][1][1] = xj2.dyy;

    double lg[2][2][2];
    double scale = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int kk = 0; kk < 2; ++kk) {
                double t = ddX[i][j][kk];
                double sc = std::abs(t);
                for (int a = 0; a < 2; ++a) {
                    double adv = Xa[a] * (a == 0 ? cj.G[i][j][kk].dx : cj.G[i][j][kk].dy);
                    double drag = -cj.G[a][j][kk].v * dX[i][a];
                    double c1 = cj.G[i][a][kk].v * dX[a][j];
                    double c2 = cj.G[i][j][a].v * dX[a][kk];
                    t += adv + drag + c1 + c2;
                    sc = std::max({sc, std::abs(adv), std::abs(drag), std::abs(c1), std::abs(c2)});
                }
                lg[i][j][kk] = t;
                scale = std::max(scale, sc);
            }
        }
    }
    ProjFieldResidual out;
    double mu[2];
    for (int j = 0; j < 2; ++j) {
        mu[j] = (lg[0][0][j] + lg[1][1][j]) / 3.0;
    }
    out.mu = {mu[0], mu[1]};
    double res = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int kk = 0; kk < 2; ++kk) {
                double expect = mu[j] * (i == kk ? 1.0 : 0.0) + mu[kk] * (i == j ? 1.0 : 0.0);
                res = std::max(res, std::abs(lg[i][j][kk] - expect));
            }
        }
    }
    out.residual = res;
    out.scale = std::max(scale, std::max(std::abs(mu[0]), std::abs(mu[1])));
    return out;
}

SigmaField lie_derivative_sigma(const SigmaField& s, const VectorField2& X) {
    SigmaField out;
    out.chart = s.chart;
    auto make = [s, X](int i, int j) {
        ScalarField f;
        f.f2 = [s, X, i, j](const Jet2d& xs, const Jet2d& ys) {
            require_coord_seeds(xs, ys);
            double x = xs.v, y = ys.v;
            Jet4d ss[2][2];
            ss[0][0] = eval4(s.s11, x, y);
            ss[0][1] = ss[1][0] = eval4(s.s12, x, y);
            ss[1][1] = eval4(s.s22, x, y);
            Jet4d xx1 = eval4(X.X1, x, y);
            Jet4d xx2 = eval4(X.X2, x, y);
            Jet2d sj[2][2];
            Jet2d dsj[2][2][2];  // dsj[a][i][j] = d_a sigma^ij
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    sj[a][b] = ss[a][b].v;
                    dsj[0][a][b] = ss[a][b].dx;
                    dsj[1][a][b] = ss[a][b].dy;
                }
            }
            Jet2d Xj[2] = {xx1.v, xx2.v};
            Jet2d dXj[2][2];  // dXj[a][i] = d_a X^i
            dXj[0][0] = xx1.dx;
            dXj[1][0] = xx1.dy;
            dXj[0][1] = xx2.dx;
            dXj[1][1] = xx2.dy;
            Jet2d r(0.0);
            for (int a = 0; a < 2; ++a) {
                r += Xj[a] * dsj[a][i][j] - sj[a][j] * dXj[a][i] - sj[i][a] * dXj[a][j];
            }
            r += (2.0 / 3.0) * (dXj[0][0] + dXj[1][1]) * sj[i][j];
            return r;
        };
        return f;
    };
    out.s11 = make(0, 0);
    out.s12 = make(0, 1);
    out.s22 = make(1, 1);
    return out;
}

JetPoint jet_project(double t, double x, double y, double xd, double yd, double xdd, double ydd) {
    (void)t;
    if (std::abs(xd) <= 1e-10 * std::max(1.0, std::abs(yd))) {
        throw VerticalTangent("jet_project: |x'| below tolerance");
    }
    JetPoint p;
    p.x = x;
    p.y = y;
    p.yx = yd / xd;
    p.yxx = (ydd * xd - xdd * yd) / (xd * xd * xd);
    return p;
}

}  // namespace projconn
