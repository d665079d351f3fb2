#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "projconn/fields.hpp"
#include "projconn/util.hpp"

using namespace projconn;

TEST_CASE("field_from provides both jet levels") {
    ScalarField f = field_from([](auto X, auto Y) { return sin(X) * exp(Y) + X * X * Y; });
    auto fv = [](double x, double y) { return std::sin(x) * std::exp(y) + x * x * y; };
    double x = 0.4, y = -0.2;
    Jet2d a = eval2(f, x, y);
    CHECK(a.v == doctest::Approx(fv(x, y)).epsilon(1e-14));
    CHECK(a.dx == doctest::Approx(oracle::fd_x(fv, x, y)).epsilon(1e-7));
    REQUIRE(f.has_f4());
    Jet4d b = eval4(f, x, y);
    CHECK(b.v.v == doctest::Approx(fv(x, y)).epsilon(1e-14));
    // third derivative f_xxy = -sin(x) e^y + 2 picked out of the nested jet
    CHECK(b.dy.dxx == doctest::Approx(-std::sin(x) * std::exp(y) + 2.0).epsilon(1e-12));
}

TEST_CASE("univariate closures evaluate at both levels") {
    SmoothFn1 s = smooth_fn1([](auto t) { return t * t * t - 2.0 * t; });
    Jet2d u = jet_x(0.5) * jet_y(1.5);
    Jet2d r = s.f2(u);
    double t = u.v;
    CHECK(r.v == doctest::Approx(t * t * t - 2.0 * t).epsilon(1e-14));
    Jet4d u4 = jet4_x(0.5) * jet4_y(1.5);
    Jet4d r4 = s.f4(u4);
    CHECK(r4.v.v == doctest::Approx(r.v).epsilon(1e-14));
    CHECK(r4.v.dx == doctest::Approx(r.dx).epsilon(1e-14));
}

TEST_CASE("adaptive simpson against fixed-grid reference") {
    auto f = [](double t) { return std::exp(-t * t) * std::cos(3.0 * t); };
    double ref = oracle::simpson_fixed(f, -1.0, 2.0, 20000);
    CHECK(adaptive_simpson(f, -1.0, 2.0, 1e-13) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(adaptive_simpson([](double t) { return t * t; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(adaptive_simpson([](double t) { return std::sin(t); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("antiderivative fields carry analytic derivatives") {
    // F(x, y) = int_1^y exp(-s^2/4) ds + 7, independent of x.
    SmoothFn1 integrand = smooth_fn1([](auto S) { return exp(-S * S / 4.0); });
    ScalarField F = antiderivative_field(integrand, 1.0, 7.0, 1e-13);
    auto Fv = [](double, double y) {
        return oracle::simpson_fixed([](double s) { return std::exp(-s * s / 4.0); }, 1.0, y,
                                     20000) +
               7.0;
    };
    double x = 0.3, y = 2.2;
    Jet2d a = eval2(F, x, y);
    CHECK(a.v == doctest::Approx(Fv(x, y)).epsilon(1e-10));
    CHECK(a.dx == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(a.dy == doctest::Approx(std::exp(-y * y / 4.0)).epsilon(1e-13));
    CHECK(a.dyy == doctest::Approx(-y / 2.0 * std::exp(-y * y / 4.0)).epsilon(1e-13));
    REQUIRE(F.has_f4());
    Jet4d b = eval4(F, x, y);
    CHECK(b.v.v == doctest::Approx(a.v).epsilon(1e-13));
    CHECK(b.v.dy == doctest::Approx(a.dy).epsilon(1e-13));
    // third derivative in y comes from the integrand's second
    auto fy = [](double, double yy) { return std::exp(-yy * yy / 4.0); };
    CHECK(b.dy.dyy == doctest::Approx(oracle::fd_yy(fy, x, y)).epsilon(1e-6));
}

TEST_CASE("rng stream is deterministic and in range") {
    RngStream a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(a.uniform(-2.0, 3.0) >= -2.0);
    RngStream c(43);
    CHECK(c.uniform() != RngStream(42).uniform());
}

TEST_CASE("chart sampling avoids singular set and margins") {
    Chart ch{0.0, 1.0, -1.0, 1.0};
    RngStream rng(7);
    auto singular = [](double x, double y) { return std::abs(y - x) < 0.05; };
    for (int i = 0; i < 200; ++i) {
        auto [x, y] = sample_chart_point(ch, singular, rng);
        CHECK(ch.contains(x, y, 0.0));
        CHECK(!singular(x, y));
    }
}

TEST_CASE("2x2 helpers") {
    Mat2 m{2.0, 1.0, -1.0, 3.0};
    CHECK(m.det() == doctest::Approx(7.0));
    Mat2 mi = m.inverse();
    Mat2 id = m * mi;
    CHECK(id.a == doctest::Approx(1.0));
    CHECK(id.b == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(id.c == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(id.d == doctest::Approx(1.0));
}
