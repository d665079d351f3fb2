#pragma once

#include <functional>
#include <utility>

#include "projconn/errors.hpp"
#include "projconn/jet.hpp"
#include "projconn/util.hpp"

namespace projconn {

struct Chart {
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;

    bool contains(double x, double y, double margin = 0.0) const {
        return x >= x0 + margin && x <= x1 - margin && y >= y0 + margin && y <= y1 - margin;
    }
};

// A smooth scalar function of two variables, evaluated on jets.  f2 yields
// the value and derivatives up to second order; f4 (nested jets) extends to
// fourth order and may be absent for derived fields that are never
// differentiated past second order.
struct ScalarField {
    std::function<Jet2d(const Jet2d&, const Jet2d&)> f2;
    std::function<Jet4d(const Jet4d&, const Jet4d&)> f4;

    bool has_f4() const {
        return static_cast<bool>(f4);
    }
};

template <class F>
ScalarField field_from(F f) {
    ScalarField s;
    s.f2 = [f](const Jet2d& x, const Jet2d& y) { return f(x, y); };
    s.f4 = [f](const Jet4d& x, const Jet4d& y) { return f(x, y); };
    return s;
}

// second-order-only field (no nested evaluation available)
template <class F>
ScalarField field_from_f2(F f) {
    ScalarField s;
    s.f2 = [f](const Jet2d& x, const Jet2d& y) { return f(x, y); };
    return s;
}

inline Jet2d eval2(const ScalarField& s, double x, double y) {
    return s.f2(jet_x(x), jet_y(y));
}
inline Jet4d eval4(const ScalarField& s, double x, double y) {
    if (!s.f4) {
        throw Error("field does not support fourth-order evaluation");
    }
    return s.f4(jet4_x(x), jet4_y(y));
}
inline double eval_value(const ScalarField& s, double x, double y) {
    return eval2(s, x, y).v;
}

// One-variable smooth closures (used by the normal-form catalog).
struct SmoothFn1 {
    std::function<Jet2d(const Jet2d&)> f2;
    std::function<Jet4d(const Jet4d&)> f4;
};

template <class F>
SmoothFn1 smooth_fn1(F f) {
    SmoothFn1 s;
    s.f2 = [f](const Jet2d& t) { return f(t); };
    s.f4 = [f](const Jet4d& t) { return f(t); };
    return s;
}

// Complex-analytic one-variable closure h(z).
struct SmoothCFn1 {
    std::function<Jet2c(const Jet2c&)> f2;
    std::function<Jet4c(const Jet4c&)> f4;
};

template <class F>
SmoothCFn1 smooth_cfn1(F f) {
    SmoothCFn1 s;
    s.f2 = [f](const Jet2c& t) { return f(t); };
    s.f4 = [f](const Jet4c& t) { return f(t); };
    return s;
}

// apply a univariate function with known derivative chain c0..c2 / c0..c4
inline Jet2d univariate_apply(const Jet2d& arg, double c0, double c1, double c2) {
    return jet_chain(arg, c0, c1, c2);
}
inline Jet4d univariate_apply(const Jet4d& arg, double c0, double c1, double c2, double c3,
                              double c4) {
    Jet2d f0 = jet_chain(arg.v, c0, c1, c2);
    Jet2d f1 = jet_chain(arg.v, c1, c2, c3);
    Jet2d f2 = jet_chain(arg.v, c2, c3, c4);
    return jet_chain(arg, f0, f1, f2);
}

// Field y -> c + int_{base}^{y} u(s) ds for a smooth integrand u.  The
// integrand's own jets supply every derivative slot; only the value needs
// quadrature.
inline ScalarField antiderivative_field(SmoothFn1 integrand, double base, double constant = 0.0,
                                        double tol = 1e-12) {
    ScalarField s;
    auto quad = [integrand, base, constant, tol](double y) {
        auto u = [&](double t) { return integrand.f2(Jet2d(t)).v; };
        return constant + adaptive_simpson(u, base, y, tol);
    };
    s.f2 = [integrand, quad](const Jet2d& /*x*/, const Jet2d& y) {
        Jet2d t;
        t.v = y.v;
        t.dy = 1.0;
        Jet2d u = integrand.f2(t);
        return univariate_apply(y, quad(y.v), u.v, u.dy);
    };
    s.f4 = [integrand, quad](const Jet4d& /*x*/, const Jet4d& y) {
        double y0 = y.v.v;
        Jet4d t;
        t.v = jet_y(y0);
        t.dy = Jet2d(1.0);
        Jet4d u = integrand.f4(t);
        return univariate_apply(y, quad(y0), u.v.v, u.v.dy, u.v.dyy, u.dy.dyy);
    };
    return s;
}

// Rejection sampler for chart points staying clear of a singular locus.
// The locus is probed on a small disk so points within ~radius of it are
// discarded along with the locus itself.
inline Vec2 sample_chart_point(const Chart& chart, const std::function<bool(double, double)>& singular,
                               RngStream& rng, double radius = 1e-2, int max_tries = 1000) {
    for (int i = 0; i < max_tries; ++i) {
        double x = rng.uniform(chart.x0, chart.x1);
        double y = rng.uniform(chart.y0, chart.y1);
        bool bad = false;
        if (singular) {
            const double off[5][2] = {{0, 0}, {radius, 0}, {-radius, 0}, {0, radius}, {0, -radius}};
            for (auto& o : off) {
                if (singular(x + o[0], y + o[1])) {
                    bad = true;
                    break;
                }
            }
        }
        if (!bad) {
            return {x, y};
        }
    }
    throw Error("sample_chart_point: chart appears to be covered by the singular locus");
}

}  // namespace projconn
