#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "projconn/jet.hpp"

using namespace projconn;

namespace {

// A composite with all elementary operations in play.
template <class T>
T sample_fn(const T& x, const T& y) {
    return exp(sin(x) * y) + atan(x * y) / (1.0 + y * y) + sqrt(2.0 + cos(x)) * log(3.0 + x * x) -
           tan(x / 4.0) * pow(1.5 + y, 1.0 / 3.0);
}

double sample_val(double x, double y) { return sample_fn<double>(x, y); }

}  // namespace

TEST_CASE("second order jets match finite differences") {
    const double pts[][2] = {{0.3, 0.7}, {-1.1, 0.4}, {1.7, -0.6}, {0.05, 2.1}};
    for (auto& p : pts) {
        double x = p[0], y = p[1];
        Jet2d r = sample_fn(jet_x(x), jet_y(y));
        CHECK(r.v == doctest::Approx(sample_val(x, y)).epsilon(1e-12));
        CHECK(r.dx == doctest::Approx(oracle::fd_x(sample_val, x, y)).epsilon(1e-6));
        CHECK(r.dy == doctest::Approx(oracle::fd_y(sample_val, x, y)).epsilon(1e-6));
        CHECK(r.dxx == doctest::Approx(oracle::fd_xx(sample_val, x, y)).epsilon(1e-5));
        CHECK(r.dxy == doctest::Approx(oracle::fd_xy(sample_val, x, y)).epsilon(1e-5));
        CHECK(r.dyy == doctest::Approx(oracle::fd_yy(sample_val, x, y)).epsilon(1e-5));
    }
}

TEST_CASE("division and mixed scalar operations") {
    double x = 0.8, y = -0.3;
    auto f = [](auto X, auto Y) { return (1.0 + X * Y) / (2.0 - X) - 3.0 * Y + X / 2.0 - 1.0; };
    Jet2d r = f(jet_x(x), jet_y(y));
    auto fv = [&](double a, double b) { return f(a, b); };
    CHECK(r.v == doctest::Approx(fv(x, y)).epsilon(1e-12));
    CHECK(r.dx == doctest::Approx(oracle::fd_x(fv, x, y)).epsilon(1e-7));
    CHECK(r.dxy == doctest::Approx(oracle::fd_xy(fv, x, y)).epsilon(1e-5));
}

TEST_CASE("jet_chain reproduces composition") {
    double x = 0.4, y = 1.2;
    Jet2d u = jet_x(x) * jet_y(y) + jet_y(y);
    // h(u) = cos(u): supply value and first two derivatives at u.v
    Jet2d direct = cos(u);
    Jet2d chained = jet_chain(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v));
    CHECK(chained.v == doctest::Approx(direct.v).epsilon(1e-14));
    CHECK(chained.dx == doctest::Approx(direct.dx).epsilon(1e-14));
    CHECK(chained.dy == doctest::Approx(direct.dy).epsilon(1e-14));
    CHECK(chained.dxx == doctest::Approx(direct.dxx).epsilon(1e-14));
    CHECK(chained.dxy == doctest::Approx(direct.dxy).epsilon(1e-14));
    CHECK(chained.dyy == doctest::Approx(direct.dyy).epsilon(1e-14));
}

TEST_CASE("nested jets expose third and fourth derivatives") {
    // f = x^3 y^2 + exp(x) sin(y): all high derivatives in closed form.
    auto f = [](auto X, auto Y) { return X * X * X * Y * Y + exp(X) * sin(Y); };
    double x = 0.6, y = -0.9;
    Jet4d r = f(jet4_x(x), jet4_y(y));
    double ex = std::exp(x), sy = std::sin(y), cy = std::cos(y);
    // value-level 2-jet
    CHECK(r.v.v == doctest::Approx(x * x * x * y * y + ex * sy).epsilon(1e-14));
    CHECK(r.v.dx == doctest::Approx(3 * x * x * y * y + ex * sy).epsilon(1e-14));
    CHECK(r.v.dxx == doctest::Approx(6 * x * y * y + ex * sy).epsilon(1e-14));
    // outer slots carry one and two extra x/y derivatives
    CHECK(r.dx.v == doctest::Approx(r.v.dx).epsilon(1e-14));
    CHECK(r.dy.dxx == doctest::Approx(6 * x * 2 * y + ex * cy).epsilon(1e-13));  // f_xxy
    CHECK(r.dx.dxx == doctest::Approx(6 * y * y + ex * sy).epsilon(1e-13));      // f_xxx
    CHECK(r.dxx.dxx == doctest::Approx(ex * sy).epsilon(1e-12));                  // f_xxxx
    CHECK(r.dxx.dyy == doctest::Approx(12 * x - ex * sy).epsilon(1e-12));         // f_xxyy
    CHECK(r.dxy.dxy == doctest::Approx(12 * x - ex * sy).epsilon(1e-12));
    CHECK(r.dyy.dyy == doctest::Approx(ex * sy).epsilon(1e-12));                  // f_yyyy
}

TEST_CASE("complex jets and harmonic split") {
    // w = z^3, z = x + i y: Re w = x^3 - 3 x y^2.
    double x = 0.7, y = 0.4;
    Jet2c zx = complexify(jet_x(x));
    Jet2c zy = complexify(jet_y(y));
    Jet2c z = zx + std::complex<double>(0.0, 1.0) * zy;
    Jet2c w = z * z * z;
    Jet2d re = real_part(w);
    CHECK(re.v == doctest::Approx(x * x * x - 3 * x * y * y).epsilon(1e-14));
    CHECK(re.dx == doctest::Approx(3 * x * x - 3 * y * y).epsilon(1e-14));
    CHECK(re.dyy == doctest::Approx(-6 * x).epsilon(1e-14));
    // harmonic: laplacian of Re w vanishes
    CHECK(re.dxx + re.dyy == doctest::Approx(0.0).epsilon(1e-14));
    // a manifestly real combination has negligible imaginary part
    Jet2c zbar = zx - std::complex<double>(0.0, 1.0) * zy;
    Jet2c prod = z * zbar;
    CHECK(imag_magnitude(prod) < 1e-14);
    CHECK(real_part(prod).v == doctest::Approx(x * x + y * y).epsilon(1e-14));
}

TEST_CASE("abs flips the whole jet with the sign of the value") {
    Jet2d u = jet_x(-2.0) * jet_y(3.0);  // value -6
    Jet2d a = abs(u);
    CHECK(a.v == doctest::Approx(6.0));
    CHECK(a.dx == doctest::Approx(-u.dx));
    CHECK(a.dxy == doctest::Approx(-u.dxy));
    Jet2d b = abs(jet_x(2.0));
    CHECK(b.dx == doctest::Approx(1.0));
}

TEST_CASE("pow with fractional exponent") {
    double x = 1.3, y = 0.2;
    auto f = [](auto X, auto Y) { return pow(X + Y * Y, 2.0 / 3.0); };
    auto fv = [&](double a, double b) { return std::pow(a + b * b, 2.0 / 3.0); };
    Jet2d r = f(jet_x(x), jet_y(y));
    CHECK(r.v == doctest::Approx(fv(x, y)).epsilon(1e-14));
    CHECK(r.dx == doctest::Approx(oracle::fd_x(fv, x, y)).epsilon(1e-7));
    CHECK(r.dyy == doctest::Approx(oracle::fd_yy(fv, x, y)).epsilon(1e-5));
}
