#include "projconn/special_functions.hpp"

#include <cmath>

namespace projconn {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955126;

double erfi_series(double x) {
    // sum x^{2k+1} / (k! (2k+1))
    double term = x;
    double sum = x;
    double x2 = x * x;
    for (int k = 1; k < 400; ++k) {
        term *= x2 / k;
        double add = term / (2 * k + 1);
        sum += add;
        if (add < 1e-17 * sum) {
            break;
        }
    }
    return kTwoOverSqrtPi * sum;
}

double erfi_asymptotic(double x) {
    // e^{x^2}/(sqrt(pi) x) * sum (2k-1)!!/(2x^2)^k, truncated at the
    // smallest term
    double inv = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        double next = term * (2 * k - 1) * inv;
        if (next >= term) {
            break;
        }
        term = next;
        sum += term;
        if (term < 1e-17 * sum) {
            break;
        }
    }
    return std::exp(x * x) / (std::sqrt(M_PI) * x) * sum;
}

}  // namespace

double erfi(double x) {
    double a = std::abs(x);
    double r = (a <= 5.0) ? erfi_series(a) : erfi_asymptotic(a);
    return x < 0.0 ? -r : r;
}

Jet2d erf_jet(const Jet2d& u) {
    double v = u.v;
    double d = kTwoOverSqrtPi * std::exp(-v * v);
    return jet_chain(u, std::erf(v), d, -2.0 * v * d);
}

Jet4d erf_jet(const Jet4d& u) {
    double v = u.v.v;
    double d = kTwoOverSqrtPi * std::exp(-v * v);
    return univariate_apply(u, std::erf(v), d, -2.0 * v * d, (4.0 * v * v - 2.0) * d,
                            (-8.0 * v * v * v + 12.0 * v) * d);
}

Jet2d erfi_jet(const Jet2d& u) {
    double v = u.v;
    double d = kTwoOverSqrtPi * std::exp(v * v);
    return jet_chain(u, erfi(v), d, 2.0 * v * d);
}

Jet4d erfi_jet(const Jet4d& u) {
    double v = u.v.v;
    double d = kTwoOverSqrtPi * std::exp(v * v);
    return univariate_apply(u, erfi(v), d, 2.0 * v * d, (4.0 * v * v + 2.0) * d,
                            (8.0 * v * v * v + 12.0 * v) * d);
}

SmoothFn1 erf_fn() {
    SmoothFn1 s;
    s.f2 = [](const Jet2d& t) { return erf_jet(t); };
    s.f4 = [](const Jet4d& t) { return erf_jet(t); };
    return s;
}

SmoothFn1 erfi_fn() {
    SmoothFn1 s;
    s.f2 = [](const Jet2d& t) { return erfi_jet(t); };
    s.f4 = [](const Jet4d& t) { return erfi_jet(t); };
    return s;
}

ScalarField halfline_Y_closed(int branch) {
    if (branch > 0) {
        // -sqrt(2 pi / 3) (erfi(sqrt(3/(2y))) - erfi(sqrt(3/2)))
        return field_from([](auto, auto Y) {
            return -std::sqrt(2.0 * M_PI / 3.0) *
                   (erfi_jet(sqrt(3.0 / (2.0 * Y))) - erfi(std::sqrt(1.5)));
        });
    }
    return field_from([](auto, auto Y) {
        return std::sqrt(2.0 * M_PI / 3.0) *
               (erf_jet(sqrt(-3.0 / (2.0 * Y))) - std::erf(std::sqrt(1.5)));
    });
}

ScalarField halfline_Y_quadrature(int branch, double tol) {
    SmoothFn1 integrand = smooth_fn1([](auto S) {
        return exp(3.0 / (2.0 * S)) / (abs(S) * sqrt(abs(S)));
    });
    return antiderivative_field(integrand, branch > 0 ? 1.0 : -1.0, 0.0, tol);
}

ScalarField halfline_Y1_closed(int branch) {
    if (branch > 0) {
        return field_from([](auto, auto Y) {
            auto arg = sqrt(3.0 / (2.0 * Y));
            return (Y - 3.0) * erfi_jet(arg) +
                   std::sqrt(6.0 / M_PI) * sqrt(Y) * exp(3.0 / (2.0 * Y));
        });
    }
    return field_from([](auto, auto Y) {
        auto arg = sqrt(-3.0 / (2.0 * Y));
        return (Y - 3.0) * erf_jet(arg) -
               std::sqrt(6.0 / M_PI) * sqrt(-Y) * exp(3.0 / (2.0 * Y));
    });
}

namespace {

SmoothFn1 rotational_integrand(double lambda, double p) {
    return smooth_fn1([lambda, p](auto S) {
        return exp(-(1.5 * lambda) * atan(S)) * pow(S * S + 1.0, -p);
    });
}

}  // namespace

ScalarField rotational_Y(double lambda, double base, double tol) {
    return antiderivative_field(rotational_integrand(lambda, 0.25), base, 0.0, tol);
}

ScalarField rotational_Upsilon(double lambda, double tol) {
    return antiderivative_field(rotational_integrand(lambda, 0.75), 0.0, 0.0, tol);
}

ScalarField rotational_Xi(double lambda, double tol) {
    // second solution by reduction of order, with the inner integral removed
    // through integration by parts:
    //   Xi = -2 + y Upsilon(y) - int_0^y s P(s) ds,  P = Upsilon'
    ScalarField ups = rotational_Upsilon(lambda, tol);
    SmoothFn1 p = rotational_integrand(lambda, 0.75);
    SmoothFn1 sp;
    sp.f2 = [p](const Jet2d& t) { return t * p.f2(t); };
    sp.f4 = [p](const Jet4d& t) { return t * p.f4(t); };
    ScalarField q = antiderivative_field(sp, 0.0, 0.0, tol);
    ScalarField s;
    s.f2 = [ups, q](const Jet2d& x, const Jet2d& y) {
        return -2.0 + y * ups.f2(x, y) - q.f2(x, y);
    };
    s.f4 = [ups, q](const Jet4d& x, const Jet4d& y) {
        return -2.0 + y * ups.f4(x, y) - q.f4(x, y);
    };
    return s;
}

}  // namespace projconn
