#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "projconn/catalog.hpp"
#include "projconn/metrization.hpp"

using namespace projconn;

namespace {

const double PI = std::acos(-1.0);

LieAction plain(int kind, double lambda) {
    LieAction a;
    a.kind = kind;
    a.lambda = lambda;
    a.scale = 1.0;
    a.P = Mat2{1.0, 0.0, 0.0, 1.0};
    return a;
}

double nz(RngStream& rng, double lo, double hi) {
    double v = rng.uniform(lo, hi);
    return rng.uniform() < 0.5 ? -v : v;
}

Mat2 conjugated(const Mat2& N, RngStream& rng, double scale) {
    for (;;) {
        Mat2 P{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
               rng.uniform(-2.0, 2.0)};
        double d = std::abs(P.det());
        if (d < 0.3 || P.norm() * P.norm() / d > 100.0) {
            continue;  // keep the conjugation well conditioned
        }
        Mat2 M = P * N * P.inverse();
        return M * scale;
    }
}

// coarse time-grid search along the orbit of p; returns -1 for undecided
int flow_search(const LieAction& a, const Vec2& p, const Vec2& q) {
    double best = 1e300;
    const int n = 16000;
    for (int i = 0; i <= n; ++i) {
        double t = -8.0 + 16.0 * i / n;
        Vec2 r = pullback_flow(a, p, t);
        double s = std::max({1.0, std::abs(q.x), std::abs(q.y)});
        best = std::min(best, std::max(std::abs(r.x - q.x), std::abs(r.y - q.y)) / s);
    }
    if (best < 5e-3) {
        return 1;
    }
    if (best > 5e-2) {
        return 0;
    }
    return -1;
}

}  // namespace

TEST_CASE("classify: worked normal forms") {
    LieAction a = classify(Mat2{2.0, 0.0, 0.0, 1.0});
    CHECK(a.kind == 1);
    CHECK(a.lambda == doctest::Approx(2.0));
    CHECK(a.scale == doctest::Approx(1.0));

    LieAction b = classify(Mat2{1.0, 1.0, 0.0, 1.0});
    CHECK(b.kind == 2);
    CHECK(b.scale == doctest::Approx(1.0));

    LieAction c = classify(Mat2{0.0, -3.0, 3.0, 0.0});
    CHECK(c.kind == 3);
    CHECK(c.lambda == doctest::Approx(0.0));
    CHECK(c.scale == doctest::Approx(3.0));

    CHECK_THROWS_AS(classify(Mat2{0.0, 0.0, 0.0, 0.0}), ZeroAction);
    // nilpotent and rank-degenerate actions have no unit-eigenvalue normal form
    CHECK_THROWS_AS(classify(Mat2{0.0, 1.0, 0.0, 0.0}), BadParam);
    CHECK_THROWS_AS(classify(Mat2{1.0, 0.0, 0.0, 0.0}), BadParam);
}

TEST_CASE("classify: recovers case and lambda from conjugated scaled normal forms") {
    RngStream rng(71);
    for (int trial = 0; trial < 120; ++trial) {
        CAPTURE(trial);
        double scale = nz(rng, 0.3, 3.0);
        int kind = trial % 3 + 1;
        double lambda = 0.0;
        Mat2 N;
        if (kind == 1) {
            lambda = nz(rng, 1.05, 4.0);
            N = Mat2{lambda, 0.0, 0.0, 1.0};
        } else if (kind == 2) {
            lambda = 1.0;
            N = Mat2{1.0, 0.0, 1.0, 1.0};
        } else {
            lambda = trial % 6 < 3 ? 0.0 : rng.uniform(0.2, 2.0);
            N = Mat2{lambda, -1.0, 1.0, lambda};
        }
        Mat2 M = conjugated(N, rng, scale);
        LieAction a = classify(M);
        CHECK(a.kind == kind);
        CHECK(a.lambda == doctest::Approx(lambda).epsilon(1e-10));
        // P realizes the normal form: M/scale = P N P^{-1}
        Mat2 rec = a.P * a.N * a.P.inverse() * a.scale;
        CHECK((rec.a - M.a) == doctest::Approx(0.0).epsilon(1e-8));
        CHECK((rec.b - M.b) == doctest::Approx(0.0).epsilon(1e-8));
        CHECK((rec.c - M.c) == doctest::Approx(0.0).epsilon(1e-8));
        CHECK((rec.d - M.d) == doctest::Approx(0.0).epsilon(1e-8));
    }
}

TEST_CASE("pullback_flow: worked values") {
    LieAction a = plain(1, 2.0);
    Vec2 r = pullback_flow(a, {1.0, 1.0}, std::log(2.0));
    CHECK(r.x == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.y == doctest::Approx(2.0).epsilon(1e-12));

    Vec2 id = pullback_flow(plain(2, 1.0), {0.3, -0.7}, 0.0);
    CHECK(id.x == doctest::Approx(0.3));
    CHECK(id.y == doctest::Approx(-0.7));

    Vec2 q = pullback_flow(plain(3, 0.0), {1.0, 0.0}, PI / 2.0);
    CHECK(std::abs(q.x) < 1e-12);
    CHECK(q.y == doctest::Approx(1.0).epsilon(1e-12));

    LieAction jb = plain(2, 1.0);
    Vec2 j = pullback_flow(jb, {2.0, 1.0}, 1.0);
    double e = std::exp(1.0);
    CHECK(j.x == doctest::Approx(2.0 * e));
    CHECK(j.y == doctest::Approx(2.0 * e + e));
}

TEST_CASE("distinguished_coords: worked values and eigenspace rejection") {
    OrbitCoords c = distinguished_coords(plain(1, 1.0), {3.0, 3.0});
    CHECK(c.u == doctest::Approx(1.0));
    CHECK(c.s == doctest::Approx(std::log(3.0)));
    CHECK(c.component == 0);

    OrbitCoords d = distinguished_coords(plain(3, 0.0), {0.6, 0.8});
    CHECK(d.u == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.s == doctest::Approx(std::atan(4.0 / 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(distinguished_coords(plain(1, 2.0), {0.0, 1.0}), OnEigenspace);
    CHECK_THROWS_AS(distinguished_coords(plain(1, 2.0), {1.0, 0.0}), OnEigenspace);
    CHECK_THROWS_AS(distinguished_coords(plain(2, 1.0), {0.0, 5.0}), OnEigenspace);
    CHECK_THROWS_AS(distinguished_coords(plain(3, 0.5), {0.0, 0.0}), OnEigenspace);

    // quadrant components, counterclockwise from (+,+)
    CHECK(distinguished_coords(plain(1, 2.0), {1.0, 1.0}).component == 0);
    CHECK(distinguished_coords(plain(1, 2.0), {-1.0, 1.0}).component == 1);
    CHECK(distinguished_coords(plain(1, 2.0), {-1.0, -1.0}).component == 2);
    CHECK(distinguished_coords(plain(1, 2.0), {1.0, -1.0}).component == 3);
    CHECK(distinguished_coords(plain(2, 1.0), {-0.5, 2.0}).component == 1);
}

TEST_CASE("distinguished coordinates round-trip") {
    RngStream rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        CAPTURE(trial);
        LieAction a1 = plain(1, nz(rng, 1.0, 3.0));
        Vec2 p1{nz(rng, 0.2, 2.0), rng.uniform(0.2, 2.0)};  // parametrization covers u2 > 0
        OrbitCoords c1 = distinguished_coords(a1, p1);
        Vec2 r1 = coefficients_from_distinguished(a1, c1);
        CHECK(r1.x == doctest::Approx(p1.x).epsilon(1e-12));
        CHECK(r1.y == doctest::Approx(p1.y).epsilon(1e-12));

        LieAction a2 = plain(2, 1.0);
        Vec2 p2{nz(rng, 0.2, 2.0), nz(rng, 0.1, 2.0)};
        OrbitCoords c2 = distinguished_coords(a2, p2);
        Vec2 r2 = coefficients_from_distinguished(a2, c2);
        CHECK(r2.x == doctest::Approx(p2.x).epsilon(1e-12));
        CHECK(r2.y == doctest::Approx(p2.y).epsilon(1e-12));

        LieAction a3 = plain(3, trial % 2 == 0 ? 0.0 : rng.uniform(0.2, 1.5));
        Vec2 p3{nz(rng, 0.2, 2.0), nz(rng, 0.2, 2.0)};
        OrbitCoords c3 = distinguished_coords(a3, p3);
        Vec2 r3 = coefficients_from_distinguished(a3, c3);
        CHECK(r3.x == doctest::Approx(p3.x).epsilon(1e-12));
        CHECK(r3.y == doctest::Approx(p3.y).epsilon(1e-12));
    }
}

TEST_CASE("invariant u is flow-constant and s advances by t") {
    RngStream rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        CAPTURE(trial);
        int kind = trial % 4;  // 0: I, 1: II, 2: III0, 3: IIIlam
        double t = rng.uniform(-3.0, 3.0);
        if (kind == 0) {
            LieAction a = plain(1, nz(rng, 1.0, 3.0));
            Vec2 p{nz(rng, 0.2, 2.0), nz(rng, 0.2, 2.0)};
            OrbitCoords c0 = distinguished_coords(a, p);
            OrbitCoords c1 = distinguished_coords(a, pullback_flow(a, p, t));
            CHECK(c1.u == doctest::Approx(c0.u).epsilon(1e-10));
            CHECK(c1.s - c0.s == doctest::Approx(t).epsilon(1e-10));
            CHECK(c1.component == c0.component);
        } else if (kind == 1) {
            LieAction a = plain(2, 1.0);
            Vec2 p{nz(rng, 0.2, 2.0), nz(rng, 0.1, 2.0)};
            OrbitCoords c0 = distinguished_coords(a, p);
            OrbitCoords c1 = distinguished_coords(a, pullback_flow(a, p, t));
            CHECK(c1.u == doctest::Approx(c0.u).epsilon(1e-10));
            CHECK(c1.s - c0.s == doctest::Approx(t).epsilon(1e-10));
            CHECK(c1.component == c0.component);
        } else {
            double lambda = kind == 2 ? 0.0 : rng.uniform(0.2, 1.5);
            LieAction a = plain(3, lambda);
            Vec2 p{nz(rng, 0.2, 2.0), nz(rng, 0.2, 2.0)};
            OrbitCoords c0 = distinguished_coords(a, p);
            OrbitCoords c1 = distinguished_coords(a, pullback_flow(a, p, t));
            double ds = c1.s - c0.s - t;
            ds -= 2.0 * PI * std::round(ds / (2.0 * PI));
            CHECK(std::abs(ds) < 1e-10);
            if (lambda == 0.0) {
                CHECK(c1.u == doctest::Approx(c0.u).epsilon(1e-10));
            } else {
                // wrapping s multiplies u by e^{2 pi lambda k}
                double d = std::log(c1.u) - std::log(c0.u);
                double period = 2.0 * PI * lambda;
                d -= period * std::round(d / period);
                CHECK(std::abs(d) < 1e-10);
            }
        }
    }
}

TEST_CASE("orbit_equivalent: worked examples") {
    LieAction a = plain(1, 2.0);
    CHECK(orbit_equivalent(a, {1.0, 1.0}, {4.0, 2.0}));
    CHECK(!orbit_equivalent(a, {1.0, 1.0}, {-1.0, 1.0}));  // different quadrant
    CHECK(orbit_equivalent(a, {1.0, 0.0}, {2.5, 0.0}));    // matching eigenray
    CHECK(!orbit_equivalent(a, {1.0, 0.0}, {-2.5, 0.0}));
    CHECK(!orbit_equivalent(a, {1.0, 0.0}, {0.0, 1.0}));   // different eigenrays
    CHECK(orbit_equivalent(a, {0.0, 0.4}, {0.0, 9.0}));

    LieAction c = plain(3, 0.0);
    CHECK(orbit_equivalent(c, {1.0, 0.0}, {0.6, 0.8}));    // same radius
    CHECK(!orbit_equivalent(c, {1.0, 0.0}, {1.2, 0.0}));   // radius differs

    LieAction d = plain(3, 0.5);
    Vec2 far = pullback_flow(d, {1.0, 0.0}, 3.0 * PI);     // one and a half turns
    CHECK(orbit_equivalent(d, {1.0, 0.0}, far));
}

TEST_CASE("orbit_equivalent agrees with a flow-search oracle") {
    RngStream rng(37);
    int decided = 0;
    for (int trial = 0; trial < 200; ++trial) {
        CAPTURE(trial);
        for (int kind = 1; kind <= 3; ++kind) {
            LieAction a = kind == 1   ? plain(1, nz(rng, 1.0, 2.5))
                          : kind == 2 ? plain(2, 1.0)
                                      : plain(3, trial % 2 == 0 ? 0.0 : rng.uniform(0.2, 1.0));
            Vec2 p{nz(rng, 0.2, 1.5), nz(rng, 0.2, 1.5)};
            Vec2 q;
            if (trial % 2 == 0) {
                q = pullback_flow(a, p, rng.uniform(-3.0, 3.0));
            } else {
                q = Vec2{nz(rng, 0.2, 1.5), nz(rng, 0.2, 1.5)};
            }
            int oracle = flow_search(a, p, q);
            if (oracle < 0) {
                continue;
            }
            ++decided;
            CHECK(orbit_equivalent(a, p, q, 1e-6) == (oracle == 1));
        }
    }
    CHECK(decided > 400);
}

TEST_CASE("sigma_from_distinguished composes the basis") {
    SigmaField s1, s2;
    s1.s11 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y + 1.0; });
    s1.s12 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    s1.s22 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    s2.s11 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    s2.s12 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    s2.s22 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y + 1.0; });

    LieAction a = plain(1, 2.0);
    OrbitCoords c{0.0, 1.0, 0};
    SigmaField w = sigma_from_distinguished(a, c, s1, s2);
    CHECK(eval_value(w.s11, 0.3, 0.4) == doctest::Approx(1.0));  // sigma1 + sigma2
    CHECK(eval_value(w.s22, 0.3, 0.4) == doctest::Approx(1.0));
    CHECK(eval_value(w.s12, 0.3, 0.4) == doctest::Approx(0.0));

    // fixed u, varying s: all coefficient pairs lie on one orbit
    for (double u : {0.5, -1.25}) {
        for (int kind : {1, 2, 3}) {
            LieAction ak = plain(kind, kind == 1 ? 2.0 : kind == 3 ? 0.7 : 1.0);
            Vec2 base = coefficients_from_distinguished(ak, {0.1, u, 0});
            for (double s : {-1.0, 0.4, 1.7}) {
                Vec2 other = coefficients_from_distinguished(ak, {s, u, 0});
                CHECK(orbit_equivalent(ak, base, other));
            }
        }
    }
}

TEST_CASE("dom3 parametrization and homothetic points") {
    auto u = dom3_parametrize(0.0, PI / 2.0, PI / 4.0);
    CHECK(u[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(u[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(std::abs(u[2]) < 1e-12);

    // flowing back by r lands on the unit sphere
    RngStream rng(43);
    auto eig = dom3_eigenvalues();
    for (int trial = 0; trial < 50; ++trial) {
        double r = rng.uniform(-2.0, 2.0);
        double th = rng.uniform(0.3, PI - 0.3);
        double ph = rng.uniform(0.1, 2.0 * PI - 0.1);
        auto v = dom3_parametrize(r, th, ph);
        double n2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            double back = std::exp(-eig[i] * r) * v[i];
            n2 += back * back;
        }
        CHECK(std::sqrt(n2) == doctest::Approx(1.0).epsilon(1e-12));
        // pairwise invariants are flow-constant
        auto w = dom3_parametrize(r + 0.7, th, ph);
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                if (std::abs(v[i]) < 1e-6 || std::abs(v[j]) < 1e-6) {
                    continue;
                }
                CHECK(pairwise_invariant(w[i], w[j], eig[i], eig[j]) ==
                      doctest::Approx(pairwise_invariant(v[i], v[j], eig[i], eig[j]))
                          .epsilon(1e-9));
            }
        }
    }

    struct Expect {
        double th, ph;
        const char* who;
    };
    const Expect expects[] = {{0.0, 0.3, "+sigma3"},         {PI, 5.0, "-sigma3"},
                              {PI / 2.0, 0.0, "+sigma1"},    {PI / 2.0, PI / 2.0, "+sigma2"},
                              {PI / 2.0, PI, "-sigma1"},     {PI / 2.0, 1.5 * PI, "-sigma2"}};
    for (const auto& e : expects) {
        CAPTURE(e.who);
        try {
            dom3_parametrize(0.3, e.th, e.ph);
            CHECK(false);
        } catch (const ExceptionalPoint& ex) {
            CHECK(std::string(ex.what()).find(e.who) != std::string::npos);
        }
    }
    CHECK_THROWS_AS(dom3_parametrize(0.0, -0.1, 0.3), BadParam);
    CHECK_THROWS_AS(dom3_parametrize(0.0, 1.0, 2.0 * PI), BadParam);
}

TEST_CASE("recover_projective_field: flat homothety sanity") {
    SigmaField id;
    id.s11 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y + 1.0; });
    id.s12 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y; });
    id.s22 = field_from([](const auto& x, const auto& y) { return 0.0 * x * y + 1.0; });
    id.chart = Chart{-1.0, 1.0, -1.0, 1.0};
    double res = 1.0;
    VectorField2 X = recover_projective_field({id}, {-2.0 / 3.0}, 2, &res);
    CHECK(res < 1e-10);
    for (double x : {-0.7, 0.2}) {
        for (double y : {-0.4, 0.8}) {
            CHECK(eval_value(X.X1, x, y) == doctest::Approx(x).epsilon(1e-8));
            CHECK(eval_value(X.X2, x, y) == doctest::Approx(y).epsilon(1e-8));
        }
    }
}

TEST_CASE("recover_projective_field: degree-3 family") {
    Chart common{0.9, 1.3, 0.15, 0.45};
    std::vector<SigmaField> basis;
    for (const char* label : {"dom3.g1", "dom3.g2", "dom3.g3"}) {
        SigmaField s = sigma_from_metric(make(label).metric);
        s.chart = common;
        basis.push_back(s);
    }
    auto eig = dom3_eigenvalues();
    double res = 1.0;
    VectorField2 X =
        recover_projective_field(basis, {eig[0], eig[1], eig[2]}, 2, &res);
    CHECK(res < 1e-8);
    for (double x : {0.95, 1.2}) {
        for (double y : {0.2, 0.4}) {
            CHECK(eval_value(X.X1, x, y) == doctest::Approx(2.0 * x).epsilon(1e-7));
            CHECK(eval_value(X.X2, x, y) == doctest::Approx(y).epsilon(1e-7));
        }
    }

    // the recovered field induces a genuine Killing tensor downstream
    Metric2 g1 = make("dom3.g1").metric;
    QuadraticForm2 K = killing_from_projective_field(g1, X);
    RngStream rng(53);
    for (int k = 0; k < 10; ++k) {
        Vec2 p = sample_chart_point(common, g1.singular, rng);
        CHECK(killing_residual(g1, K, p.x, p.y).max_relative() < 1e-8);
    }

    CHECK_THROWS_AS(recover_projective_field(basis, {1.0, 1.0, 1.0}, 2), NoSolution);
}
