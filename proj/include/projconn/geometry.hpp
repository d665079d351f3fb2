#pragma once

#include <array>
#include <functional>
#include <string>

#include "projconn/errors.hpp"
#include "projconn/fields.hpp"
#include "projconn/jet.hpp"

namespace projconn {

struct Metric2 {
    ScalarField g11, g12, g22;
    Chart chart;
    std::function<bool(double, double)> singular;  // true on (a neighbourhood of) the singular locus
    std::string label;

    const ScalarField& comp(int i, int j) const {
        return (i == 0 && j == 0) ? g11 : (i == 1 && j == 1) ? g22 : g12;
    }
};

// Gamma[k][i][j], symmetric in (i, j)
struct Christoffel2 {
    std::array<std::array<std::array<double, 2>, 2>, 2> G{};
};

struct Christoffel2Jets {
    std::array<std::array<std::array<Jet2d, 2>, 2>, 2> G{};
};

// y'' = f0 + f1 y' + f2 y'^2 + f3 y'^3
struct ProjConn {
    std::array<ScalarField, 4> f;
    Chart chart;
    std::function<bool(double, double)> singular;
    std::function<std::array<double, 4>(double, double)> values;  // fast value-only path
};

struct SigmaField {
    ScalarField s11, s12, s22;
    Chart chart;

    const ScalarField& comp(int i, int j) const {
        return (i == 0 && j == 0) ? s11 : (i == 1 && j == 1) ? s22 : s12;
    }
};

struct VectorField2 {
    ScalarField X1, X2;
};

struct QuadraticForm2 {
    ScalarField q11, q12, q22;
    Chart chart;

    const ScalarField& comp(int i, int j) const {
        return (i == 0 && j == 0) ? q11 : (i == 1 && j == 1) ? q22 : q12;
    }
};

struct Benenti2 {
    ScalarField L11, L12, L21, L22;  // (1,1) tensor, not symmetric in general
    Chart chart;
};

struct Residual4 {
    std::array<double, 4> r{};
    std::array<double, 4> scale{};

    // Residuals are compared against the largest term appearing anywhere in
    // the system, not per equation: an identically-zero equation would
    // otherwise divide roundoff by roundoff.
    double max_relative(double floor_ = 1e-30) const {
        double s = floor_;
        for (int i = 0; i < 4; ++i) {
            s = std::max(s, scale[i]);
        }
        double m = 0.0;
        for (int i = 0; i < 4; ++i) {
            m = std::max(m, std::abs(r[i]) / s);
        }
        return m;
    }
};

struct ProjFieldResidual {
    double residual = 0.0;
    double scale = 0.0;
    Vec2 mu;

    double relative(double floor_ = 1e-30) const {
        return residual / std::max(scale, floor_);
    }
};

struct JetPoint {
    double x = 0.0, y = 0.0, yx = 0.0, yxx = 0.0;
};

// ---- generic level helpers (JT = double-valued or Jet2d-valued jets) ----

// Christoffel symbols from the three metric component jets at one point.
// Differentiating the jets drops one order, so 2-jets give values and
// nested 4-jets give Christoffel 2-jets.
template <class JT>
std::array<std::array<std::array<typename std::decay_t<decltype(JT{}.v)>, 2>, 2>, 2>
christoffel_from_jets(const JT& g11, const JT& g12, const JT& g22) {
    using T = typename std::decay_t<decltype(JT{}.v)>;
    T g[2][2] = {{g11.v, g12.v}, {g12.v, g22.v}};
    T dg[2][2][2];  // dg[l][i][j] = d_l g_ij
    dg[0][0][0] = g11.dx;
    dg[1][0][0] = g11.dy;
    dg[0][0][1] = dg[0][1][0] = g12.dx;
    dg[1][0][1] = dg[1][1][0] = g12.dy;
    dg[0][1][1] = g22.dx;
    dg[1][1][1] = g22.dy;

    T det = g[0][0] * g[1][1] - g[0][1] * g[0][1];
    double dv = value_of(det);
    double scale = std::max({std::abs(value_of(g[0][0])), std::abs(value_of(g[0][1])),
                             std::abs(value_of(g[1][1]))});
    if (std::abs(dv) <= 1e-12 * scale * scale) {
        throw SingularMetric("christoffel: |det g| = " + std::to_string(std::abs(dv)) +
                             " below tolerance");
    }
    T gi[2][2];
    gi[0][0] = g[1][1] / det;
    gi[0][1] = gi[1][0] = -g[0][1] / det;
    gi[1][1] = g[0][0] / det;

    std::array<std::array<std::array<T, 2>, 2>, 2> G{};
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i) {
            for (int j = i; j < 2; ++j) {
                T sum = T(0.0);
                for (int l = 0; l < 2; ++l) {
                    sum += gi[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
                }
                G[k][i][j] = T(0.5) * sum;
                G[k][j][i] = G[k][i][j];
            }
        }
    }
    return G;
}

template <class JT>
std::array<JT, 3> sigma_from_metric_jets(const JT& g11, const JT& g12, const JT& g22) {
    JT det = g11 * g22 - g12 * g12;
    double dv = value_of(det);
    double scale = std::max({std::abs(value_of(g11)), std::abs(value_of(g12)),
                             std::abs(value_of(g22))});
    if (std::abs(dv) <= 1e-12 * scale * scale) {
        throw SingularMetric("sigma_from_metric: |det g| below tolerance");
    }
    JT w = pow(abs(det), 1.0 / 3.0);
    return {w * g22 / det, -(w * g12 / det), w * g11 / det};
}

template <class JT>
std::array<JT, 3> metric_from_sigma_jets(const JT& s11, const JT& s12, const JT& s22) {
    JT det = s11 * s22 - s12 * s12;
    double dv = value_of(det);
    double scale = std::max({std::abs(value_of(s11)), std::abs(value_of(s12)),
                             std::abs(value_of(s22))});
    if (std::abs(dv) <= 1e-12 * scale * scale) {
        throw DegenerateSigma("metric_from_sigma: |det sigma| below tolerance");
    }
    JT q = det * abs(det);
    return {s22 / q, -(s12 / q), s11 / q};
}

// ---- point operations ----

Christoffel2 christoffel(const Metric2& g, double x, double y);
Christoffel2Jets christoffel_jets(const Metric2& g, double x, double y);

ProjConn proj_conn_from_metric(const Metric2& g);
SigmaField sigma_from_metric(const Metric2& g);
Metric2 metric_from_sigma(const SigmaField& s);

Residual4 metrizability_residual(const ProjConn& pc, const SigmaField& s, double x, double y);

Benenti2 benenti(const Metric2& g, const Metric2& gbar);
Mat2 benenti_at(const Metric2& g, const Metric2& gbar, double x, double y);

Residual4 killing_residual(const Metric2& g, const QuadraticForm2& K, double x, double y);
QuadraticForm2 killing_from_projective_field(const Metric2& g, const VectorField2& X);
QuadraticForm2 topalov_killing(const Metric2& g, const Metric2& gbar);
Metric2 metric_from_killing(const Metric2& g, const QuadraticForm2& K);

double rational_integral(const QuadraticForm2& h, const Metric2& g, double x, double y, double yx);

ProjFieldResidual projective_field_residual(const Metric2& g, const VectorField2& X, double x,
                                            double y);
SigmaField lie_derivative_sigma(const SigmaField& s, const VectorField2& X);

JetPoint jet_project(double t, double x, double y, double xd, double yd, double xdd, double ydd);

}  // namespace projconn
