#include "projconn/catalog.hpp"

#include <cmath>
#include <complex>
#include <set>

namespace projconn {

namespace {

constexpr std::complex<double> CI{0.0, 1.0};
const double PI = std::acos(-1.0);

void need(bool ok, const std::string& label, const std::string& what) {
    if (!ok) {
        throw BadParam(label + ": " + what);
    }
}

// Parameter lookup with defaults; rejects names the entry does not declare.
struct Params {
    std::string label;
    const std::map<std::string, double>& given;
    std::set<std::string> seen;

    double take(const std::string& k, double dflt) {
        seen.insert(k);
        auto it = given.find(k);
        return it == given.end() ? dflt : it->second;
    }
    void finish() const {
        for (const auto& kv : given) {
            if (!seen.count(kv.first)) {
                throw BadParam(label + ": unknown parameter '" + kv.first + "'");
            }
        }
    }
};

void check_xi(double xi, const std::string& label) {
    need(xi > 0.0 && xi <= 4.0 && xi != 1.0, label, "xi must lie in (0,1) or (1,4]");
}
void check_h(double h, const std::string& label) {
    need(h != 0.0 && h <= 1.0, label, "h must be nonzero and <= 1");
}
void check_pm1(double v, const std::string& label, const std::string& name) {
    need(v == 1.0 || v == -1.0, label, name + " must be +1 or -1");
}
void check_angle(double th, const std::string& label, const std::string& name) {
    need(th >= 0.0 && th < 2.0 * PI, label, name + " must lie in [0,2pi)");
}
void check_phiC(double phi, const std::string& label) {
    need(phi >= 0.0 && phi < PI, label, "phiC must lie in [0,pi): C = e^{i phiC}");
}

// Degeneracy of the evaluated components stands in for a closed-form
// description of the singular locus.
void attach_generic_singular(Metric2& m) {
    ScalarField a = m.g11, b = m.g12, c = m.g22;
    m.singular = [a, b, c](double x, double y) {
        try {
            double g11 = eval_value(a, x, y);
            double g12 = eval_value(b, x, y);
            double g22 = eval_value(c, x, y);
            double det = g11 * g22 - g12 * g12;
            double scale = std::max({std::abs(g11), std::abs(g12), std::abs(g22)});
            if (!std::isfinite(det) || !std::isfinite(scale)) {
                return true;
            }
            return std::abs(det) <= 1e-8 * std::max(scale * scale, 1e-300);
        } catch (const Error&) {
            return true;
        }
    };
}

template <class F11, class F12, class F22>
Metric2 real_metric(F11 a, F12 b, F22 c, Chart chart, std::string label) {
    Metric2 m;
    m.g11 = field_from(a);
    m.g12 = field_from(b);
    m.g22 = field_from(c);
    m.chart = chart;
    m.label = std::move(label);
    attach_generic_singular(m);
    return m;
}

// g = P dz^2 + Q dz~^2 in z = x + iy.  Q is built independently from the
// conjugated formula rather than by conjugating P, so the imaginary parts
// of the assembled components measure a real consistency of the entry.
template <int K, class PF, class QF, class J>
auto complex_comp(const PF& P, const QF& Q, const J& X, const J& Y) {
    auto zx = complexify(X);
    auto zy = complexify(Y);
    auto z = zx + CI * zy;
    auto zb = zx - CI * zy;
    auto p = P(z, zb);
    auto q = Q(z, zb);
    if constexpr (K == 0) {
        return real_part(p + q);
    } else if constexpr (K == 1) {
        return real_part(CI * (p - q));
    } else {
        return real_part(-(p + q));
    }
}

template <class PF, class QF>
Metric2 complex_metric(PF P, QF Q, Chart chart, std::string label,
                       std::function<double(double, double)>* imag_out) {
    Metric2 m;
    m.g11.f2 = [P, Q](const Jet2d& X, const Jet2d& Y) { return complex_comp<0>(P, Q, X, Y); };
    m.g11.f4 = [P, Q](const Jet4d& X, const Jet4d& Y) { return complex_comp<0>(P, Q, X, Y); };
    m.g12.f2 = [P, Q](const Jet2d& X, const Jet2d& Y) { return complex_comp<1>(P, Q, X, Y); };
    m.g12.f4 = [P, Q](const Jet4d& X, const Jet4d& Y) { return complex_comp<1>(P, Q, X, Y); };
    m.g22.f2 = [P, Q](const Jet2d& X, const Jet2d& Y) { return complex_comp<2>(P, Q, X, Y); };
    m.g22.f4 = [P, Q](const Jet4d& X, const Jet4d& Y) { return complex_comp<2>(P, Q, X, Y); };
    m.chart = chart;
    m.label = std::move(label);
    attach_generic_singular(m);
    if (imag_out) {
        *imag_out = [P, Q](double x, double y) {
            Jet2c zx = complexify(jet_x(x));
            Jet2c zy = complexify(jet_y(y));
            Jet2c z = zx + CI * zy;
            Jet2c zb = zx - CI * zy;
            Jet2c p = P(z, zb);
            Jet2c q = Q(z, zb);
            double r = imag_magnitude(p + q);
            r = std::max(r, imag_magnitude(CI * (p - q)));
            return r;
        };
    }
    return m;
}

Jet2d ap(const SmoothFn1& f, const Jet2d& t) {
    return f.f2(t);
}
Jet4d ap(const SmoothFn1& f, const Jet4d& t) {
    return f.f4(t);
}
Jet2c ap(const SmoothCFn1& f, const Jet2c& t) {
    return f.f2(t);
}
Jet4c ap(const SmoothCFn1& f, const Jet4c& t) {
    return f.f4(t);
}

VectorField2 scaling_field() {
    VectorField2 X;
    X.X1 = field_from([](const auto& x, const auto& y) {
        (void)y;
        return 2.0 * x;
    });
    X.X2 = field_from([](const auto& x, const auto& y) {
        (void)x;
        return y;
    });
    return X;
}

const char* kDegree3Note =
    "member of the three-parameter metrization family; carries the projective field "
    "X = 2x d/dx + y d/dy";

SmoothFn1 default_X() {
    return smooth_fn1([](const auto& t) { return t + 2.0; });
}
SmoothFn1 default_Y() {
    return smooth_fn1([](const auto& t) { return t - 1.0; });
}
SmoothFn1 one_fn() {
    return smooth_fn1([](const auto& t) { return 0.0 * t + 1.0; });
}
SmoothCFn1 default_h() {
    return smooth_cfn1([](const auto& z) { return z; });
}

Chart dini_liouville_chart() {
    return Chart{-1.0, 1.0, -0.85, -0.15};
}
Chart dini_jordan_chart() {
    return Chart{-0.5, 1.0, -1.0, 0.5};
}
Chart dini_complex_chart() {
    return Chart{-1.0, 1.0, 0.2, 1.5};
}

// F(zeta, c; x, y): resultant-type polynomial entering the degree-3 normal
// forms with two or three essential parameters.
template <class J>
J res_poly(const J& X, const J& Y, double zeta, double c) {
    J y2 = Y * Y;
    J y3 = y2 * Y;
    J y4 = y2 * y2;
    J y6 = y3 * y3;
    J r = y6 - 9.0 * X * y4 + 27.0 * X * X * y2 - 27.0 * X * X * X + 4.0 * c * c;
    r = r - (36.0 * X * Y + 4.0 * y3) * c;
    r = r + (18.0 * X * y2 - 5.0 * y4 - 9.0 * X * X - 8.0 * c * Y) * zeta;
    r = r + (4.0 * zeta * zeta) * y2;
    return r;
}

CatalogEntry degree3_entry(std::string label, Metric2 m,
                           std::map<std::string, double> params) {
    CatalogEntry e;
    e.label = std::move(label);
    e.params = std::move(params);
    e.metric = std::move(m);
    e.projective_field = scaling_field();
    e.notes = kDegree3Note;
    return e;
}

}  // namespace

CatalogEntry make_dini_liouville(int which, SmoothFn1 X, SmoothFn1 Y, double eps, Chart chart) {
    need(which == 1 || which == 2, "dini.liouville", "which must be 1 or 2");
    need(eps == 1.0 || eps == -1.0, "dini.liouville", "eps must be +1 or -1");
    CatalogEntry e;
    e.label = which == 1 ? "dini.liouville.g1" : "dini.liouville.g2";
    e.dini_partner = which == 1 ? "dini.liouville.g2" : "dini.liouville.g1";
    e.params = {{"eps", eps}};
    e.notes = "Liouville pair (X(x) - Y(y))(dx^2 + eps dy^2); the partner shares the geodesics";
    if (which == 1) {
        e.metric = real_metric(
            [X, Y](const auto& x, const auto& y) { return ap(X, x) - ap(Y, y); },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [X, Y, eps](const auto& x, const auto& y) { return eps * (ap(X, x) - ap(Y, y)); },
            chart, e.label);
    } else {
        e.metric = real_metric(
            [X, Y](const auto& x, const auto& y) {
                auto ix = inverse(ap(X, x));
                return (ix - inverse(ap(Y, y))) * ix;
            },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [X, Y, eps](const auto& x, const auto& y) {
                auto iy = inverse(ap(Y, y));
                return eps * ((inverse(ap(X, x)) - iy) * iy);
            },
            chart, e.label);
    }
    return e;
}

CatalogEntry make_dini_jordan(int which, SmoothFn1 Y, SmoothFn1 Yprime, Chart chart) {
    need(which == 1 || which == 2, "dini.jordan", "which must be 1 or 2");
    CatalogEntry e;
    e.label = which == 1 ? "dini.jordan.g1" : "dini.jordan.g2";
    e.dini_partner = which == 1 ? "dini.jordan.g2" : "dini.jordan.g1";
    e.notes = "Jordan-block pair built on (1 + x Y'(y)); the partner shares the geodesics";
    if (which == 1) {
        e.metric = real_metric(
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [Yprime](const auto& x, const auto& y) { return 0.5 * (1.0 + x * ap(Yprime, y)); },
            [](const auto& x, const auto& y) { return 0.0 * x * y; }, chart, e.label);
    } else {
        e.metric = real_metric(
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [Y, Yprime](const auto& x, const auto& y) {
                auto w = ap(Y, y);
                auto a = 1.0 + x * ap(Yprime, y);
                return -a * inverse(w * w * w);
            },
            [Y, Yprime](const auto& x, const auto& y) {
                auto w = ap(Y, y);
                auto w2 = w * w;
                auto a = 1.0 + x * ap(Yprime, y);
                return a * a * inverse(w2 * w2);
            },
            chart, e.label);
    }
    return e;
}

CatalogEntry make_dini_complex(int which, SmoothCFn1 h, Chart chart) {
    need(which == 1 || which == 2, "dini.complex", "which must be 1 or 2");
    CatalogEntry e;
    e.label = which == 1 ? "dini.complex.g1" : "dini.complex.g2";
    e.dini_partner = which == 1 ? "dini.complex.g2" : "dini.complex.g1";
    e.notes =
        "complex Liouville pair in z = x + iy; h must have real Taylor coefficients so that "
        "the conjugate function is h itself";
    if (which == 1) {
        // (h(z~) - h(z))(dz~^2 - dz^2)
        auto P = [h](const auto& z, const auto& zb) { return ap(h, z) - ap(h, zb); };
        auto Q = [h](const auto& z, const auto& zb) { return ap(h, zb) - ap(h, z); };
        e.metric = complex_metric(P, Q, chart, e.label, &e.imag_residual);
    } else {
        // (1/h(z~) - 1/h(z))(dz~^2/h(z~) - dz^2/h(z))
        auto P = [h](const auto& z, const auto& zb) {
            auto iz = inverse(ap(h, z));
            return -((inverse(ap(h, zb)) - iz) * iz);
        };
        auto Q = [h](const auto& z, const auto& zb) {
            auto ib = inverse(ap(h, zb));
            return (ib - inverse(ap(h, z))) * ib;
        };
        e.metric = complex_metric(P, Q, chart, e.label, &e.imag_residual);
    }
    return e;
}

CatalogEntry make(const std::string& label, const std::map<std::string, double>& params) {
    Params P{label, params, {}};
    CatalogEntry e;
    e.label = label;

    if (label == "flat") {
        P.finish();
        e.metric = real_metric([](const auto& x, const auto& y) { return 0.0 * x * y + 1.0; },
                               [](const auto& x, const auto& y) { return 0.0 * x * y; },
                               [](const auto& x, const auto& y) { return 0.0 * x * y + 1.0; },
                               Chart{-2.0, 2.0, -2.0, 2.0}, label);
        e.notes = "Euclidean plane";
        return e;
    }

    if (label == "sphere") {
        P.finish();
        e.metric = real_metric(
            [](const auto& x, const auto& y) {
                (void)x;
                auto s = sin(y);
                return s * s;
            },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [](const auto& x, const auto& y) { return 0.0 * x * y + 1.0; },
            Chart{-3.0, 3.0, 0.35, 2.79}, label);
        VectorField2 X;
        X.X1 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
        X.X2 = field_from([](const auto& x, const auto& y) {
            auto s = sin(y);
            return s * s * cos(x);
        });
        e.projective_field = X;
        e.notes = "round sphere in longitude/colatitude; carries the projective, "
                  "non-affine field X = sin^2(y) cos(x) d/dy";
        return e;
    }

    if (label == "dini.liouville.g1" || label == "dini.liouville.g2") {
        double eps = P.take("eps", 1.0);
        P.finish();
        check_pm1(eps, label, "eps");
        return make_dini_liouville(label.back() == '1' ? 1 : 2, default_X(), default_Y(), eps,
                                   dini_liouville_chart());
    }
    if (label == "dini.jordan.g1" || label == "dini.jordan.g2") {
        P.finish();
        return make_dini_jordan(label.back() == '1' ? 1 : 2, default_Y(), one_fn(),
                                dini_jordan_chart());
    }
    if (label == "dini.complex.g1" || label == "dini.complex.g2") {
        P.finish();
        return make_dini_complex(label.back() == '1' ? 1 : 2, default_h(), dini_complex_chart());
    }

    if (label == "A.1") {
        double xi = P.take("xi", 2.0);
        double h = P.take("h", 0.5);
        double eps = P.take("eps", 1.0);
        double rho = P.take("rho", 1.0);
        double kappa = P.take("kappa", 1.0);
        P.finish();
        check_xi(xi, label);
        check_h(h, label);
        check_pm1(eps, label, "eps");
        check_pm1(rho, label, "rho");
        need(kappa != 0.0, label, "kappa must be nonzero");
        if (xi == 2.0) {
            need(h != -eps && h != -4.0 * eps, label, "xi = 2 requires h != -eps and h != -4 eps");
        }
        if (xi == 3.0 && eps == -1.0) {
            need(std::abs(h) != 1.0, label, "xi = 3 with eps = -1 requires |h| != 1");
        }
        if (xi == 4.0) {
            need(h != 1.0, label, "xi = 4 requires h != 1");
        }
        if (h == -1.0) {
            need(rho == 1.0, label, "h = -1 requires rho = +1");
        }
        if (h == 1.0 && eps == 1.0) {
            need(kappa > 0.0, label, "h = 1 with eps = +1 requires kappa > 0");
        }
        e.metric = real_metric(
            [xi, h, rho, kappa](const auto& x, const auto& y) {
                auto ex = exp(xi * x);
                auto ey = exp(xi * y);
                return kappa * (ex - h * ey) * exp(2.0 * x) /
                       ((1.0 + rho * h * ey) * ((1.0 + rho * ex) * (1.0 + rho * ex)));
            },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [xi, h, eps, rho, kappa](const auto& x, const auto& y) {
                auto ex = exp(xi * x);
                auto ey = exp(xi * y);
                auto dy = 1.0 + rho * h * ey;
                return kappa * eps * (ex - h * ey) * exp(2.0 * y) / (dy * dy * (1.0 + rho * ex));
            },
            Chart{0.2, 1.0, -1.0, -0.2}, label);
        e.params = {{"xi", xi}, {"h", h}, {"eps", eps}, {"rho", rho}, {"kappa", kappa}};
        e.notes = "nondegenerate-eigenvalue family, exponential branch";
        return e;
    }

    if (label == "A.2") {
        double h = P.take("h", 0.5);
        double kappa = P.take("kappa", 1.0);
        P.finish();
        check_h(h, label);
        need(kappa != 0.0, label, "kappa must be nonzero");
        if (h == 1.0) {
            need(kappa > 0.0, label, "h = 1 requires kappa > 0");
        }
        e.metric = real_metric(
            [kappa](const auto& x, const auto& y) {
                return kappa * (y - x) * exp(-3.0 * x) / (x * x * y);
            },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [h, kappa](const auto& x, const auto& y) {
                return kappa * h * (y - x) * exp(-3.0 * y) / (x * y * y);
            },
            Chart{0.2, 0.8, 1.2, 2.0}, label);
        e.params = {{"h", h}, {"kappa", kappa}};
        e.notes = "nondegenerate-eigenvalue family, rational branch";
        return e;
    }

    if (label == "A.3a") {
        double lambda = P.take("lambda", 0.2);
        double h = P.take("h", 0.1);
        double theta = P.take("theta", 0.0);
        P.finish();
        need(lambda > 0.0, label, "lambda must be positive (use A.3b for lambda = 0)");
        need(h != 0.0, label, "h must be nonzero");
        double hmax = std::exp(-3.0 * lambda * PI);
        need(std::abs(h) <= hmax, label, "requires |h| <= e^{-3 lambda pi}");
        check_angle(theta, label, "theta");
        if (std::abs(h) == hmax) {
            need(theta < PI, label, "|h| = e^{-3 lambda pi} restricts theta to [0,pi)");
        }
        e.metric = real_metric(
            [lambda, theta](const auto& x, const auto& y) {
                auto sx = sin(x + theta);
                return sin(y - x) * exp(-3.0 * lambda * x) / (sin(y + theta) * (sx * sx));
            },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [lambda, h, theta](const auto& x, const auto& y) {
                auto sy = sin(y + theta);
                return h * sin(y - x) * exp(-3.0 * lambda * y) / (sin(x + theta) * (sy * sy));
            },
            Chart{0.3, 1.0, 1.5, 2.2}, label);
        e.params = {{"lambda", lambda}, {"h", h}, {"theta", theta}};
        e.notes = "nondegenerate-eigenvalue family, trigonometric branch with drift";
        return e;
    }

    if (label == "A.3b") {
        double h = P.take("h", 0.5);
        double kappa = P.take("kappa", 1.0);
        P.finish();
        check_h(h, label);
        need(h != -1.0 && h != 1.0, label, "lambda = 0 requires h != +1 and h != -1");
        need(kappa > 0.0, label, "kappa must be positive");
        e.metric = real_metric(
            [kappa](const auto& x, const auto& y) {
                auto sx = sin(x);
                return kappa * sin(y - x) / (sin(y) * (sx * sx));
            },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [h, kappa](const auto& x, const auto& y) {
                auto sy = sin(y);
                return kappa * h * sin(y - x) / (sin(x) * (sy * sy));
            },
            Chart{0.3, 1.0, 1.5, 2.2}, label);
        e.params = {{"h", h}, {"kappa", kappa}};
        e.notes = "nondegenerate-eigenvalue family, trigonometric branch without drift";
        return e;
    }

    if (label == "B.4") {
        double xi = P.take("xi", 2.0);
        double phiC = P.take("phiC", PI / 3.0);
        double kappa = P.take("kappa", 1.0);
        P.finish();
        check_xi(xi, label);
        check_phiC(phiC, label);
        need(kappa != 0.0, label, "kappa must be nonzero");
        if (xi == 2.0) {
            need(phiC != 0.0, label, "xi = 2 requires C != 1 and C != -1");
        }
        if (xi == 3.0) {
            need(phiC != 0.0 && phiC != PI / 2.0, label, "xi = 3 requires C^2 != 1 and C^2 != -1");
        }
        if (xi == 4.0) {
            need(phiC != 0.0, label, "xi = 4 requires C != 1");
        }
        std::complex<double> C = std::exp(CI * phiC);
        std::complex<double> Cb = std::conj(C);
        auto Pf = [xi, C, Cb, kappa](const auto& z, const auto& zb) {
            auto wz = C * pow(z, xi);
            auto wb = Cb * pow(zb, xi);
            return kappa * (wz - wb) / ((1.0 + wb) * ((1.0 + wz) * (1.0 + wz)));
        };
        auto Qf = [xi, C, Cb, kappa](const auto& z, const auto& zb) {
            auto wz = C * pow(z, xi);
            auto wb = Cb * pow(zb, xi);
            return -kappa * (wz - wb) / (((1.0 + wb) * (1.0 + wb)) * (1.0 + wz));
        };
        e.metric = complex_metric(Pf, Qf, Chart{0.55, 0.8, 0.3, 0.5}, label, &e.imag_residual);
        e.params = {{"xi", xi}, {"phiC", phiC}, {"kappa", kappa}};
        e.notes = "complex-eigenvalue family, power branch; C = e^{i phiC}";
        return e;
    }

    if (label == "B.5") {
        double phiC = P.take("phiC", PI / 4.0);
        double kappa = P.take("kappa", 1.0);
        P.finish();
        check_phiC(phiC, label);
        need(kappa > 0.0, label, "kappa must be positive");
        std::complex<double> C = std::exp(CI * phiC);
        std::complex<double> Cb = std::conj(C);
        auto Pf = [C, kappa](const auto& z, const auto& zb) {
            return kappa * (zb - z) * C * exp(-3.0 * z) / (z * z * zb);
        };
        auto Qf = [Cb, kappa](const auto& z, const auto& zb) {
            return -kappa * (zb - z) * Cb * exp(-3.0 * zb) / (z * (zb * zb));
        };
        e.metric = complex_metric(Pf, Qf, Chart{0.3, 1.0, 0.3, 1.0}, label, &e.imag_residual);
        e.params = {{"phiC", phiC}, {"kappa", kappa}};
        e.notes = "complex-eigenvalue family, exponential branch; C = e^{i phiC}";
        return e;
    }

    if (label == "B.6a") {
        double lambda = P.take("lambda", 0.3);
        double phiC = P.take("phiC", PI / 4.0);
        double theta = P.take("theta", 0.0);
        P.finish();
        need(lambda > 0.0, label, "lambda must be positive (use B.6b for lambda = 0)");
        check_phiC(phiC, label);
        check_angle(theta, label, "theta");
        std::complex<double> C = std::exp(CI * phiC);
        std::complex<double> Cb = std::conj(C);
        auto Pf = [lambda, C, theta](const auto& z, const auto& zb) {
            auto sz = sin(z + theta);
            return sin(zb - z) * C * exp(-3.0 * lambda * z) / (sin(zb + theta) * (sz * sz));
        };
        auto Qf = [lambda, Cb, theta](const auto& z, const auto& zb) {
            auto sb = sin(zb + theta);
            return -sin(zb - z) * Cb * exp(-3.0 * lambda * zb) / (sin(z + theta) * (sb * sb));
        };
        e.metric = complex_metric(Pf, Qf, Chart{0.2, 1.0, 0.25, 1.0}, label, &e.imag_residual);
        e.params = {{"lambda", lambda}, {"phiC", phiC}, {"theta", theta}};
        e.notes = "complex-eigenvalue family, trigonometric branch with drift; C = e^{i phiC}";
        return e;
    }

    if (label == "B.6b") {
        double phiC = P.take("phiC", PI / 4.0);
        double kappa = P.take("kappa", 1.0);
        P.finish();
        check_phiC(phiC, label);
        need(phiC != 0.0, label, "lambda = 0 requires C != 1");
        need(kappa > 0.0, label, "kappa must be positive");
        std::complex<double> C = std::exp(CI * phiC);
        std::complex<double> Cb = std::conj(C);
        auto Pf = [C, kappa](const auto& z, const auto& zb) {
            auto sz = sin(z);
            return kappa * sin(zb - z) * C / (sin(zb) * (sz * sz));
        };
        auto Qf = [Cb, kappa](const auto& z, const auto& zb) {
            auto sb = sin(zb);
            return -kappa * sin(zb - z) * Cb / (sin(z) * (sb * sb));
        };
        e.metric = complex_metric(Pf, Qf, Chart{0.2, 1.0, 0.25, 1.0}, label, &e.imag_residual);
        e.params = {{"phiC", phiC}, {"kappa", kappa}};
        e.notes = "complex-eigenvalue family, trigonometric branch without drift; C = e^{i phiC}";
        return e;
    }

    if (label == "C.7") {
        double xi = P.take("xi", 2.0);
        double rho = P.take("rho", -1.0);
        double kappa = P.take("kappa", 1.0);
        P.finish();
        check_xi(xi, label);
        need(xi != 0.5, label, "xi = 1/2 is excluded");
        check_pm1(rho, label, "rho");
        need(kappa != 0.0, label, "kappa must be nonzero");
        double a = 1.0 / xi;
        e.metric = real_metric(
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [a, rho, kappa](const auto& x, const auto& y) {
                auto w = pow(y, a) + x;
                auto d = y - rho;
                return -kappa * w / (d * d * d);
            },
            [a, rho, kappa](const auto& x, const auto& y) {
                auto w = pow(y, a) + x;
                auto d = y - rho;
                auto d2 = d * d;
                return kappa * w * w / (d2 * d2);
            },
            Chart{0.2, 1.0, 0.2, 1.0}, label);
        e.params = {{"xi", xi}, {"rho", rho}, {"kappa", kappa}};
        e.notes = "repeated-eigenvalue family, power branch";
        return e;
    }

    if (label == "C.8") {
        double kappa = P.take("kappa", 1.0);
        double branch = P.take("branch", 1.0);
        double quadrature = P.take("quadrature", 0.0);
        double Yconst = P.take("Yconst", 0.0);
        P.finish();
        need(kappa != 0.0, label, "kappa must be nonzero");
        check_pm1(branch, label, "branch");
        need(quadrature == 0.0 || quadrature == 1.0, label, "quadrature must be 0 or 1");
        int br = branch > 0 ? 1 : -1;
        ScalarField Y = quadrature == 1.0 ? halfline_Y_quadrature(br) : halfline_Y_closed(br);
        Chart chart = br == 1 ? Chart{3.0, 5.0, 0.8, 2.0} : Chart{3.0, 5.0, -2.0, -0.8};
        Metric2 m;
        m.g11 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
        m.g12.f2 = [Y, kappa, Yconst](const Jet2d& x, const Jet2d& y) {
            return 0.5 * kappa * (Y.f2(x, y) + x + Yconst);
        };
        m.g12.f4 = [Y, kappa, Yconst](const Jet4d& x, const Jet4d& y) {
            return 0.5 * kappa * (Y.f4(x, y) + x + Yconst);
        };
        m.g22 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
        m.chart = chart;
        m.label = label;
        attach_generic_singular(m);
        e.metric = std::move(m);
        e.params = {{"kappa", kappa}, {"branch", branch}, {"quadrature", quadrature},
                    {"Yconst", Yconst}};
        e.notes =
            "repeated-eigenvalue half-line family kappa (Y(y) + x) dx dy; Y is the antiderivative "
            "of e^{3/(2s)} |s|^{-3/2} and has closed forms through erfi (y > 0) and erf (y < 0); "
            "quadrature = 1 rebuilds Y by adaptive quadrature, Yconst shifts the base-point "
            "constant";
        return e;
    }

    if (label == "C.9a" || label == "C.9b") {
        bool drift = label == "C.9a";
        double lambda = drift ? P.take("lambda", 0.5) : 0.0;
        double theta = drift ? P.take("theta", 0.0) : 0.0;
        double kappa = drift ? 1.0 : P.take("kappa", 1.0);
        double Yconst = P.take("Yconst", 0.0);
        P.finish();
        if (drift) {
            need(lambda > 0.0, label, "lambda must be positive (use C.9b for lambda = 0)");
            check_angle(theta, label, "theta");
            kappa = std::exp(lambda * theta);
        } else {
            need(kappa > 0.0, label, "kappa must be positive");
        }
        ScalarField Y = rotational_Y(lambda, 1.0);
        Metric2 m;
        m.g11 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
        m.g12.f2 = [Y, kappa, Yconst](const Jet2d& x, const Jet2d& y) {
            return 0.5 * kappa * (Y.f2(x, y) + x + Yconst);
        };
        m.g12.f4 = [Y, kappa, Yconst](const Jet4d& x, const Jet4d& y) {
            return 0.5 * kappa * (Y.f4(x, y) + x + Yconst);
        };
        m.g22 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
        m.chart = Chart{3.5, 5.0, -1.0, 1.0};
        m.label = label;
        attach_generic_singular(m);
        e.metric = std::move(m);
        if (drift) {
            e.params = {{"lambda", lambda}, {"theta", theta}, {"Yconst", Yconst}};
            e.notes = "repeated-eigenvalue rotational family e^{lambda theta} (Y_lambda(y) + x) "
                      "dx dy with drift; Yconst shifts the base-point constant";
        } else {
            e.params = {{"kappa", kappa}, {"Yconst", Yconst}};
            e.notes = "repeated-eigenvalue rotational family kappa (Y_0(y) + x) dx dy; "
                      "Yconst shifts the base-point constant";
        }
        return e;
    }

    if (label == "dom3.g1") {
        P.finish();
        Metric2 m = real_metric(
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [](const auto& x, const auto& y) { return 0.5 * (y * y + x); },
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            Chart{0.3, 1.5, -1.0, 1.0}, label);
        return degree3_entry(label, std::move(m), {});
    }

    if (label == "dom3.g2") {
        P.finish();
        Metric2 m = real_metric(
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [](const auto& x, const auto& y) {
                auto phi = y * y + x;
                return -phi * inverse(y * y * y);
            },
            [](const auto& x, const auto& y) {
                auto phi = y * y + x;
                auto y2 = y * y;
                return phi * phi * inverse(y2 * y2);
            },
            Chart{0.3, 1.5, 0.3, 1.2}, label);
        return degree3_entry(label, std::move(m), {});
    }

    if (label == "dom3.g3") {
        P.finish();
        Metric2 m = real_metric(
            [](const auto& x, const auto& y) {
                auto phi = y * y + x;
                auto s = 3.0 * x - y * y;
                auto s2 = s * s;
                auto s6 = s2 * s2 * s2;
                return 9.0 * phi * phi * inverse(s6);
            },
            [](const auto& x, const auto& y) {
                auto phi = y * y + x;
                auto s = 3.0 * x - y * y;
                auto s2 = s * s;
                auto s6 = s2 * s2 * s2;
                return -2.0 * y * (9.0 * x + y * y) * phi * inverse(s6);
            },
            [](const auto& x, const auto& y) {
                auto phi = y * y + x;
                auto s = 3.0 * x - y * y;
                auto s2 = s * s;
                auto s6 = s2 * s2 * s2;
                return 12.0 * x * phi * phi * inverse(s6);
            },
            Chart{0.9, 1.3, 0.15, 0.45}, label);
        return degree3_entry(label, std::move(m), {});
    }

    if (label == "dom3.nf1") {
        double kappa = P.take("kappa", 1.0);
        double eps = P.take("eps", 1.0);
        P.finish();
        need(kappa != 0.0, label, "kappa must be nonzero");
        check_pm1(eps, label, "eps");
        Metric2 m = real_metric(
            [](const auto& x, const auto& y) { return 0.0 * x * y; },
            [kappa, eps](const auto& x, const auto& y) {
                auto phi = y * y + x;
                auto d = y - eps;
                return -kappa * phi * inverse(d * d * d);
            },
            [kappa, eps](const auto& x, const auto& y) {
                auto phi = y * y + x;
                auto d = y - eps;
                auto d2 = d * d;
                return kappa * phi * phi * inverse(d2 * d2);
            },
            Chart{0.3, 1.2, -0.6, 0.4}, label);
        return degree3_entry(label, std::move(m), {{"kappa", kappa}, {"eps", eps}});
    }

    if (label == "dom3.nf2") {
        double kappa = P.take("kappa", 1.0);
        double eps = P.take("eps", 1.0);
        P.finish();
        need(kappa != 0.0, label, "kappa must be nonzero");
        check_pm1(eps, label, "eps");
        Metric2 m = real_metric(
            [kappa, eps](const auto& x, const auto& y) {
                auto F = res_poly(x, y, 0.0, eps);
                auto phi = y * y + x;
                return 9.0 * kappa * phi * phi * inverse(F * F);
            },
            [kappa, eps](const auto& x, const auto& y) {
                auto F = res_poly(x, y, 0.0, eps);
                auto phi = y * y + x;
                return -kappa * (y * y * y + 9.0 * x * y - 2.0 * eps) * phi * inverse(F * F);
            },
            [kappa, eps](const auto& x, const auto& y) {
                auto F = res_poly(x, y, 0.0, eps);
                auto phi = y * y + x;
                return 12.0 * kappa * x * phi * phi * inverse(F * F);
            },
            Chart{0.5, 1.0, 0.2, 0.8}, label);
        return degree3_entry(label, std::move(m), {{"kappa", kappa}, {"eps", eps}});
    }

    if (label == "dom3.nf3") {
        double kappa = P.take("kappa", 1.0);
        double eps = P.take("eps", 1.0);
        double c = P.take("c", 0.0);
        P.finish();
        need(kappa != 0.0, label, "kappa must be nonzero");
        check_pm1(eps, label, "eps");
        Metric2 m = real_metric(
            [kappa, eps, c](const auto& x, const auto& y) {
                auto F = res_poly(x, y, eps, c);
                auto phi = y * y + x;
                return 9.0 * kappa * phi * phi * inverse(F * F);
            },
            [kappa, eps, c](const auto& x, const auto& y) {
                auto F = res_poly(x, y, eps, c);
                auto phi = y * y + x;
                return -kappa * (y * y * y + 2.0 * eps * y + 9.0 * x * y - 2.0 * c) * phi *
                       inverse(F * F);
            },
            [kappa, eps, c](const auto& x, const auto& y) {
                auto F = res_poly(x, y, eps, c);
                auto phi = y * y + x;
                return 4.0 * kappa * (eps + 3.0 * x) * phi * phi * inverse(F * F);
            },
            Chart{0.5, 1.0, 0.2, 0.8}, label);
        return degree3_entry(label, std::move(m),
                             {{"kappa", kappa}, {"eps", eps}, {"c", c}});
    }

    if (label == "dom3.spherical") {
        double theta = P.take("theta", 1.1);
        double phi = P.take("phi", 0.7);
        P.finish();
        need(theta > 0.0 && theta < PI, label, "theta must lie in (0,pi)");
        need(phi >= 0.0 && phi < 2.0 * PI, label, "phi must lie in [0,2pi)");
        if (std::abs(theta - PI / 2.0) < 1e-12) {
            for (double bad : {0.0, PI / 2.0, PI, 3.0 * PI / 2.0}) {
                need(std::abs(phi - bad) >= 1e-12, label,
                     "theta = pi/2 with phi a multiple of pi/2 lands on a generator axis; "
                     "use the dom3.g* labels instead");
            }
        }
        SigmaField s = spherical_sigma(theta, phi)[0];
        Metric2 m = metric_from_sigma(s);
        m.chart = Chart{0.9, 1.3, 0.15, 0.45};
        m.label = label;
        // the reconstruction divides by det sigma, so mask the whole
        // conditioning band around the locus, not just the exact degeneracy
        m.singular = [s](double x, double y) {
            double s11 = eval_value(s.s11, x, y);
            double s12 = eval_value(s.s12, x, y);
            double s22 = eval_value(s.s22, x, y);
            double scale = std::max({std::abs(s11), std::abs(s12), std::abs(s22)});
            return std::abs(s11 * s22 - s12 * s12) <= 1e-2 * scale * scale;
        };
        return degree3_entry(label, std::move(m), {{"theta", theta}, {"phi", phi}});
    }

    throw BadParam("unknown catalog label '" + label + "'");
}

namespace {

ScalarField lincomb(double c1, const ScalarField& f1, double c2, const ScalarField& f2, double c3,
                    const ScalarField& f3) {
    ScalarField out;
    out.f2 = [c1, f1, c2, f2, c3, f3](const Jet2d& x, const Jet2d& y) {
        return c1 * f1.f2(x, y) + c2 * f2.f2(x, y) + c3 * f3.f2(x, y);
    };
    out.f4 = [c1, f1, c2, f2, c3, f3](const Jet4d& x, const Jet4d& y) {
        return c1 * f1.f4(x, y) + c2 * f2.f4(x, y) + c3 * f3.f4(x, y);
    };
    return out;
}

SigmaField sigma_combo(const std::array<SigmaField, 3>& basis, double c1, double c2, double c3) {
    SigmaField s;
    s.s11 = lincomb(c1, basis[0].s11, c2, basis[1].s11, c3, basis[2].s11);
    s.s12 = lincomb(c1, basis[0].s12, c2, basis[1].s12, c3, basis[2].s12);
    s.s22 = lincomb(c1, basis[0].s22, c2, basis[1].s22, c3, basis[2].s22);
    s.chart = basis[0].chart;
    return s;
}

}  // namespace

std::array<SigmaField, 3> spherical_sigma(double theta, double phi) {
    std::array<SigmaField, 3> gen = {sigma_from_metric(make("dom3.g1").metric),
                                     sigma_from_metric(make("dom3.g2").metric),
                                     sigma_from_metric(make("dom3.g3").metric)};
    for (auto& s : gen) {
        s.chart = Chart{0.9, 1.3, 0.15, 0.45};
    }
    double st = std::sin(theta), ct = std::cos(theta);
    double sp = std::sin(phi), cp = std::cos(phi);
    std::array<SigmaField, 3> out;
    out[0] = sigma_combo(gen, st * cp, st * sp, ct);       // radial
    out[1] = sigma_combo(gen, ct * cp, ct * sp, -st);      // d/dtheta
    out[2] = sigma_combo(gen, -sp, cp, 0.0);               // d/dphi (unnormalized)
    return out;
}

std::vector<EntrySchema> list() {
    std::vector<EntrySchema> out;
    auto add = [&out](const std::string& label, std::vector<ParamSpec> params,
                      const std::string& locus) {
        CatalogEntry e = make(label);
        EntrySchema s;
        s.label = label;
        s.params = std::move(params);
        s.chart = e.metric.chart;
        s.singular_locus = locus;
        s.notes = e.notes;
        out.push_back(std::move(s));
    };

    add("flat", {}, "none");
    add("sphere", {}, "sin y = 0 (poles)");
    add("dini.liouville.g1", {{"eps", 1.0, "{-1,+1}"}}, "X(x) = Y(y)");
    add("dini.liouville.g2", {{"eps", 1.0, "{-1,+1}"}}, "X(x) = Y(y), X = 0, Y = 0");
    add("dini.jordan.g1", {}, "1 + x Y'(y) = 0");
    add("dini.jordan.g2", {}, "1 + x Y'(y) = 0, Y = 0");
    add("dini.complex.g1", {}, "Im h(z) = 0");
    add("dini.complex.g2", {}, "Im h(z) = 0, h = 0");
    add("A.1",
        {{"xi", 2.0, "(0,1) u (1,4]"},
         {"h", 0.5, "h != 0, h <= 1"},
         {"eps", 1.0, "{-1,+1}"},
         {"rho", 1.0, "{-1,+1}"},
         {"kappa", 1.0, "kappa != 0"}},
        "e^{xi x} = h e^{xi y}, 1 + rho e^{xi x} = 0, 1 + rho h e^{xi y} = 0");
    add("A.2", {{"h", 0.5, "h != 0, h <= 1"}, {"kappa", 1.0, "kappa != 0"}},
        "x = y, x = 0, y = 0");
    add("A.3a",
        {{"lambda", 0.2, "lambda > 0"},
         {"h", 0.1, "0 < |h| <= e^{-3 lambda pi}"},
         {"theta", 0.0, "[0,2pi)"}},
        "sin(y - x) = 0, sin(x + theta) = 0, sin(y + theta) = 0");
    add("A.3b", {{"h", 0.5, "h != 0, |h| != 1, h <= 1"}, {"kappa", 1.0, "kappa > 0"}},
        "sin(y - x) = 0, sin x = 0, sin y = 0");
    add("B.4",
        {{"xi", 2.0, "(0,1) u (1,4]"},
         {"phiC", PI / 3.0, "[0,pi)"},
         {"kappa", 1.0, "kappa != 0"}},
        "Im(C z^xi) = 0, 1 + C z^xi = 0");
    add("B.5", {{"phiC", PI / 4.0, "[0,pi)"}, {"kappa", 1.0, "kappa > 0"}}, "y = 0, z = 0");
    add("B.6a",
        {{"lambda", 0.3, "lambda > 0"},
         {"phiC", PI / 4.0, "[0,pi)"},
         {"theta", 0.0, "[0,2pi)"}},
        "y = 0, sin(z + theta) = 0");
    add("B.6b", {{"phiC", PI / 4.0, "(0,pi)"}, {"kappa", 1.0, "kappa > 0"}},
        "y = 0, sin z = 0");
    add("C.7",
        {{"xi", 2.0, "(0,1) u (1,4], xi != 1/2"},
         {"rho", -1.0, "{-1,+1}"},
         {"kappa", 1.0, "kappa != 0"}},
        "y^{1/xi} + x = 0, y = rho");
    add("C.8",
        {{"kappa", 1.0, "kappa != 0"},
         {"branch", 1.0, "{-1,+1}"},
         {"quadrature", 0.0, "{0,1}"},
         {"Yconst", 0.0, "any"}},
        "Y(y) + x = 0, y = 0");
    add("C.9a",
        {{"lambda", 0.5, "lambda > 0"},
         {"theta", 0.0, "[0,2pi)"},
         {"Yconst", 0.0, "any"}},
        "Y_lambda(y) + x = 0");
    add("C.9b", {{"kappa", 1.0, "kappa > 0"}, {"Yconst", 0.0, "any"}}, "Y_0(y) + x = 0");
    add("dom3.g1", {}, "y^2 + x = 0");
    add("dom3.g2", {}, "y^2 + x = 0, y = 0");
    add("dom3.g3", {}, "y^2 + x = 0, 3x = y^2, det = 0");
    add("dom3.nf1", {{"kappa", 1.0, "kappa != 0"}, {"eps", 1.0, "{-1,+1}"}},
        "y^2 + x = 0, y = eps");
    add("dom3.nf2", {{"kappa", 1.0, "kappa != 0"}, {"eps", 1.0, "{-1,+1}"}},
        "y^2 + x = 0, F(0,eps) = 0, det = 0");
    add("dom3.nf3",
        {{"kappa", 1.0, "kappa != 0"}, {"eps", 1.0, "{-1,+1}"}, {"c", 0.0, "any"}},
        "y^2 + x = 0, F(eps,c) = 0, det = 0");
    add("dom3.spherical",
        {{"theta", 1.1, "(0,pi), off the generator axes"}, {"phi", 0.7, "[0,2pi)"}},
        "det sigma = 0");
    return out;
}

}  // namespace projconn
