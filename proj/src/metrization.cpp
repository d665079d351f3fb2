#include "projconn/metrization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace projconn {

namespace {

const double PI = std::acos(-1.0);

Vec2 unit(Vec2 v) {
    double n = std::hypot(v.x, v.y);
    if (n == 0.0) {
        return v;
    }
    // deterministic orientation: largest component positive
    double lead = std::abs(v.x) >= std::abs(v.y) ? v.x : v.y;
    double s = lead < 0.0 ? -1.0 : 1.0;
    return {s * v.x / n, s * v.y / n};
}

Vec2 eigenvector(const Mat2& M, double ev) {
    // rows of (M - ev I) are orthogonal to the eigenvector; take the larger
    Vec2 r1{M.a - ev, M.b}, r2{M.c, M.d - ev};
    Vec2 v1{-r1.y, r1.x}, v2{-r2.y, r2.x};
    Vec2 v = std::hypot(r1.x, r1.y) >= std::hypot(r2.x, r2.y) ? v1 : v2;
    return unit(v);
}

}  // namespace

LieAction classify(const Mat2& M) {
    double nrm = M.norm();
    if (nrm < 1e-14) {
        throw ZeroAction("classify: the action matrix vanishes");
    }
    double tr = M.trace();
    double det = M.det();
    double disc = tr * tr - 4.0 * det;

    LieAction a;
    if (std::abs(disc) < 1e-10 * nrm * nrm) {
        double mu = 0.5 * tr;
        Mat2 B{M.a - mu, M.b, M.c, M.d - mu};
        if (B.norm() <= 1e-9 * nrm) {
            // proportional to the identity: diagonal with equal eigenvalues
            a.kind = 1;
            a.lambda = 1.0;
            a.scale = mu;
            a.P = Mat2{1.0, 0.0, 0.0, 1.0};
            a.N = Mat2{1.0, 0.0, 0.0, 1.0};
            return a;
        }
        if (std::abs(mu) <= 1e-12 * nrm) {
            throw BadParam("classify: nilpotent action admits no unit-eigenvalue normal form");
        }
        a.kind = 2;
        a.scale = mu;
        a.lambda = 1.0;
        Mat2 A{M.a / mu, M.b / mu, M.c / mu, M.d / mu};
        Mat2 C{A.a - 1.0, A.b, A.c, A.d - 1.0};
        // C is nilpotent of rank one: pick w with C w != 0, then v = C w
        Vec2 w1{1.0, 0.0}, w2{0.0, 1.0};
        Vec2 c1 = C * w1, c2 = C * w2;
        Vec2 w = std::hypot(c1.x, c1.y) >= std::hypot(c2.x, c2.y) ? w1 : w2;
        Vec2 v = C * w;
        a.P = Mat2{w.x, v.x, w.y, v.y};
        a.N = Mat2{1.0, 0.0, 1.0, 1.0};
        return a;
    }

    if (disc > 0.0) {
        double sq = std::sqrt(disc);
        double e1 = 0.5 * (tr + sq), e2 = 0.5 * (tr - sq);
        double big = std::abs(e1) >= std::abs(e2) ? e1 : e2;
        double small = std::abs(e1) >= std::abs(e2) ? e2 : e1;
        if (std::abs(small) <= 1e-12 * nrm) {
            throw BadParam("classify: a vanishing eigenvalue admits no (lambda, 1) normal form");
        }
        a.kind = 1;
        a.scale = small;
        a.lambda = big / small;
        Vec2 pb = eigenvector(M, big), ps = eigenvector(M, small);
        a.P = Mat2{pb.x, ps.x, pb.y, ps.y};
        a.N = Mat2{a.lambda, 0.0, 0.0, 1.0};
        return a;
    }

    double alpha = 0.5 * tr;
    double beta = 0.5 * std::sqrt(-disc);
    double s = alpha < 0.0 ? -beta : beta;
    a.kind = 3;
    a.scale = s;
    a.lambda = std::abs(alpha) / beta;
    Mat2 A{M.a / s, M.b / s, M.c / s, M.d / s};
    // eigenvector re + i im of A for lambda + i; columns (im, re)
    double re1, im1, re2, im2;
    if (std::abs(A.b) >= std::abs(A.c)) {
        re1 = A.b;
        im1 = 0.0;
        re2 = a.lambda - A.a;
        im2 = 1.0;
    } else {
        re1 = a.lambda - A.d;
        im1 = 1.0;
        re2 = A.c;
        im2 = 0.0;
    }
    a.P = Mat2{im1, re1, im2, re2};
    a.N = Mat2{a.lambda, -1.0, 1.0, a.lambda};
    return a;
}

Vec2 pullback_flow(const LieAction& a, const Vec2& u, double t) {
    switch (a.kind) {
        case 1:
            return {std::exp(a.lambda * t) * u.x, std::exp(t) * u.y};
        case 2: {
            double et = std::exp(t);
            return {et * u.x, t * et * u.x + et * u.y};
        }
        case 3: {
            double g = std::exp(a.lambda * t);
            double ct = std::cos(t), st = std::sin(t);
            return {g * (ct * u.x - st * u.y), g * (st * u.x + ct * u.y)};
        }
        default:
            throw BadParam("pullback_flow: unclassified action");
    }
}

OrbitCoords distinguished_coords(const LieAction& a, const Vec2& u) {
    OrbitCoords c;
    switch (a.kind) {
        case 1: {
            if (u.x == 0.0 || u.y == 0.0) {
                throw OnEigenspace("distinguished_coords: (u1, u2) lies on an eigenspace; "
                                   "the symmetry is homothetic there");
            }
            c.s = std::log(std::abs(u.y));
            c.u = u.x / std::pow(std::abs(u.y), a.lambda);
            c.component = u.y > 0.0 ? (u.x > 0.0 ? 0 : 1) : (u.x > 0.0 ? 3 : 2);
            return c;
        }
        case 2: {
            if (u.x == 0.0) {
                throw OnEigenspace("distinguished_coords: u1 = 0 lies on the eigenspace; "
                                   "the symmetry is homothetic there");
            }
            c.s = std::log(std::abs(u.x));
            c.u = (1.0 / u.x) * std::exp(u.y / u.x);
            c.component = u.x > 0.0 ? 0 : 1;
            return c;
        }
        case 3: {
            double r = std::hypot(u.x, u.y);
            if (r == 0.0) {
                throw OnEigenspace("distinguished_coords: the zero element has no orbit");
            }
            double s = std::atan2(u.y, u.x);
            if (s < 0.0) {
                s += 2.0 * PI;
            }
            c.s = s;
            c.u = a.lambda == 0.0 ? r : r * std::exp(-a.lambda * s);
            c.component = 0;
            return c;
        }
        default:
            throw BadParam("distinguished_coords: unclassified action");
    }
}

Vec2 coefficients_from_distinguished(const LieAction& a, const OrbitCoords& c) {
    switch (a.kind) {
        case 1:
            return {c.u * std::exp(a.lambda * c.s), std::exp(c.s)};
        case 2: {
            if (c.u == 0.0) {
                throw BadParam("coefficients_from_distinguished: u = 0 is not attained");
            }
            double u1 = (c.u > 0.0 ? 1.0 : -1.0) * std::exp(c.s);
            return {u1, u1 * (c.s + std::log(std::abs(c.u)))};
        }
        case 3: {
            double g = c.u * std::exp(a.lambda * c.s);
            return {g * std::cos(c.s), g * std::sin(c.s)};
        }
        default:
            throw BadParam("coefficients_from_distinguished: unclassified action");
    }
}

SigmaField sigma_from_distinguished(const LieAction& a, const OrbitCoords& c,
                                    const SigmaField& s1, const SigmaField& s2) {
    Vec2 u = coefficients_from_distinguished(a, c);
    auto mix = [](double c1, const ScalarField& f1, double c2, const ScalarField& f2) {
        ScalarField out;
        out.f2 = [c1, f1, c2, f2](const Jet2d& x, const Jet2d& y) {
            return c1 * f1.f2(x, y) + c2 * f2.f2(x, y);
        };
        if (f1.has_f4() && f2.has_f4()) {
            out.f4 = [c1, f1, c2, f2](const Jet4d& x, const Jet4d& y) {
                return c1 * f1.f4(x, y) + c2 * f2.f4(x, y);
            };
        }
        return out;
    };
    SigmaField s;
    s.s11 = mix(u.x, s1.s11, u.y, s2.s11);
    s.s12 = mix(u.x, s1.s12, u.y, s2.s12);
    s.s22 = mix(u.x, s1.s22, u.y, s2.s22);
    s.chart = s1.chart;
    return s;
}

bool orbit_equivalent(const LieAction& a, const Vec2& p, const Vec2& q, double tol) {
    auto same_sign = [](double x, double y) { return x * y > 0.0; };
    switch (a.kind) {
        case 1: {
            bool pa = p.y == 0.0, qa = q.y == 0.0;
            bool pb = p.x == 0.0, qb = q.x == 0.0;
            if (pa && qa) {
                if (pb && qb) {
                    return true;  // both zero
                }
                return same_sign(p.x, q.x);
            }
            if (pb && qb) {
                return same_sign(p.y, q.y);
            }
            if (pa || qa || pb || qb) {
                return false;
            }
            if (!same_sign(p.y, q.y) || !same_sign(p.x, q.x)) {
                return false;
            }
            double up = p.x / std::pow(std::abs(p.y), a.lambda);
            double uq = q.x / std::pow(std::abs(q.y), a.lambda);
            return std::abs(up - uq) <= tol * std::max({1.0, std::abs(up), std::abs(uq)});
        }
        case 2: {
            if (p.x == 0.0 && q.x == 0.0) {
                if (p.y == 0.0 && q.y == 0.0) {
                    return true;
                }
                return same_sign(p.y, q.y);
            }
            if (p.x == 0.0 || q.x == 0.0) {
                return false;
            }
            if (!same_sign(p.x, q.x)) {
                return false;
            }
            // compare log|u| = u2/u1 - log|u1|, overflow-free
            double lp = p.y / p.x - std::log(std::abs(p.x));
            double lq = q.y / q.x - std::log(std::abs(q.x));
            return std::abs(lp - lq) <= tol * std::max({1.0, std::abs(lp), std::abs(lq)});
        }
        case 3: {
            double rp = std::hypot(p.x, p.y), rq = std::hypot(q.x, q.y);
            if (rp == 0.0 || rq == 0.0) {
                return rp == rq;
            }
            if (a.lambda == 0.0) {
                return std::abs(rp - rq) <= tol * std::max(rp, rq);
            }
            OrbitCoords cp = distinguished_coords(a, p);
            OrbitCoords cq = distinguished_coords(a, q);
            double d = std::log(cq.u) - std::log(cp.u);
            double period = 2.0 * PI * a.lambda;
            double k = std::round(d / period);
            return std::abs(d - k * period) <= tol * std::max(1.0, std::abs(d));
        }
        default:
            throw BadParam("orbit_equivalent: unclassified action");
    }
}

int component_count(const LieAction& a) {
    switch (a.kind) {
        case 1:
            return 4;
        case 2:
            return 2;
        case 3:
            return 1;
        default:
            throw BadParam("component_count: unclassified action");
    }
}

double pairwise_invariant(double ui, double uj, double li, double lj) {
    return std::pow(std::abs(ui), lj) / std::pow(std::abs(uj), li);
}

std::array<double, 3> dom3_eigenvalues() {
    return {-5.0 / 3.0, -2.0 / 3.0, 4.0 / 3.0};
}

std::array<double, 3> dom3_parametrize(double r, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= PI)) {
        throw BadParam("dom3_parametrize: theta must lie in [0,pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * PI)) {
        throw BadParam("dom3_parametrize: phi must lie in [0,2pi)");
    }
    const double tol = 1e-12;
    if (theta < tol) {
        throw ExceptionalPoint("dom3_parametrize: homothetic point, ray spanned by +sigma3");
    }
    if (theta > PI - tol) {
        throw ExceptionalPoint("dom3_parametrize: homothetic point, ray spanned by -sigma3");
    }
    if (std::abs(theta - 0.5 * PI) < tol) {
        double wrapped = std::min(phi, 2.0 * PI - phi);
        if (wrapped < tol) {
            throw ExceptionalPoint("dom3_parametrize: homothetic point, ray spanned by +sigma1");
        }
        if (std::abs(phi - 0.5 * PI) < tol) {
            throw ExceptionalPoint("dom3_parametrize: homothetic point, ray spanned by +sigma2");
        }
        if (std::abs(phi - PI) < tol) {
            throw ExceptionalPoint("dom3_parametrize: homothetic point, ray spanned by -sigma1");
        }
        if (std::abs(phi - 1.5 * PI) < tol) {
            throw ExceptionalPoint("dom3_parametrize: homothetic point, ray spanned by -sigma2");
        }
    }
    return {std::exp(-5.0 * r / 3.0) * std::sin(theta) * std::cos(phi),
            std::exp(-2.0 * r / 3.0) * std::sin(theta) * std::sin(phi),
            std::exp(4.0 * r / 3.0) * std::cos(theta)};
}

VectorField2 recover_projective_field(const std::vector<SigmaField>& basis,
                                      const std::vector<double>& eigs, int degree,
                                      double* relative_residual) {
    if (basis.empty() || basis.size() != eigs.size()) {
        throw BadParam("recover_projective_field: need one eigenvalue per basis element");
    }
    if (degree < 1 || degree > 6) {
        throw BadParam("recover_projective_field: degree must lie in [1,6]");
    }

    std::vector<std::array<int, 2>> monos;
    for (int d = 0; d <= degree; ++d) {
        for (int ax = d; ax >= 0; --ax) {
            monos.push_back({ax, d - ax});
        }
    }
    const int m = static_cast<int>(monos.size());
    const int n = 2 * m;  // unknowns: X^1 then X^2 coefficients

    const Chart& chart = basis[0].chart;
    const int G = 7;
    std::vector<double> xs(G), ys(G);
    for (int i = 0; i < G; ++i) {
        xs[i] = chart.x0 + (chart.x1 - chart.x0) * (i + 1.0) / (G + 1.0);
        ys[i] = chart.y0 + (chart.y1 - chart.y0) * (i + 1.0) / (G + 1.0);
    }

    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    auto mono_val = [](const std::array<int, 2>& ab, double x, double y, double* gx, double* gy) {
        double pa = std::pow(x, ab[0]), pb = std::pow(y, ab[1]);
        *gx = ab[0] == 0 ? 0.0 : ab[0] * std::pow(x, ab[0] - 1) * pb;
        *gy = ab[1] == 0 ? 0.0 : ab[1] * pa * std::pow(y, ab[1] - 1);
        return pa * pb;
    };

    for (size_t k = 0; k < basis.size(); ++k) {
        for (int gi = 0; gi < G; ++gi) {
            for (int gj = 0; gj < G; ++gj) {
                double x = xs[gi], y = ys[gj];
                Jet2d sj[2][2];
                sj[0][0] = eval2(basis[k].s11, x, y);
                sj[0][1] = sj[1][0] = eval2(basis[k].s12, x, y);
                sj[1][1] = eval2(basis[k].s22, x, y);
                double sv[2][2] = {{sj[0][0].v, sj[0][1].v}, {sj[1][0].v, sj[1][1].v}};
                double sd[2][2][2];  // sd[l][i][j] = d_l sigma^{ij}
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        sd[0][i][j] = sj[i][j].dx;
                        sd[1][i][j] = sj[i][j].dy;
                    }
                }
                const int comps[3][2] = {{0, 0}, {0, 1}, {1, 1}};
                for (const auto& ij : comps) {
                    int i = ij[0], j = ij[1];
                    std::vector<double> row(n, 0.0);
                    for (int c = 0; c < 2; ++c) {
                        for (int t = 0; t < m; ++t) {
                            double gx, gy;
                            double mv = mono_val(monos[t], x, y, &gx, &gy);
                            double gc = c == 0 ? gx : gy;
                            double coeff = mv * sd[c][i][j] + (2.0 / 3.0) * gc * sv[i][j];
                            if (i == c) {
                                coeff -= sv[0][j] * gx + sv[1][j] * gy;
                            }
                            if (j == c) {
                                coeff -= sv[i][0] * gx + sv[i][1] * gy;
                            }
                            row[c * m + t] = coeff;
                        }
                    }
                    rows.push_back(std::move(row));
                    rhs.push_back(eigs[k] * sv[i][j]);
                }
            }
        }
    }

    const int R = static_cast<int>(rows.size());
    std::vector<double> colscale(n, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int r = 0; r < R; ++r) {
            colscale[j] = std::max(colscale[j], std::abs(rows[r][j]));
        }
        if (colscale[j] == 0.0) {
            colscale[j] = 1.0;
        }
    }

    std::vector<double> AtA(static_cast<size_t>(n) * n, 0.0), Atb(n, 0.0);
    for (int r = 0; r < R; ++r) {
        for (int i = 0; i < n; ++i) {
            double ri = rows[r][i] / colscale[i];
            Atb[i] += ri * rhs[r];
            for (int j = i; j < n; ++j) {
                AtA[i * n + j] += ri * rows[r][j] / colscale[j];
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            AtA[i * n + j] = AtA[j * n + i];
        }
    }

    std::vector<double> evals, evecs;
    jacobi_eigen_sym(AtA, n, evals, evecs);
    double emax = std::max(evals.back(), 1e-300);
    std::vector<double> coef(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (evals[j] <= 1e-12 * emax) {
            continue;  // null direction (e.g. an isometry of the basis): least-norm solution
        }
        double proj = 0.0;
        for (int i = 0; i < n; ++i) {
            proj += evecs[i * n + j] * Atb[i];
        }
        proj /= evals[j];
        for (int i = 0; i < n; ++i) {
            coef[i] += evecs[i * n + j] * proj;
        }
    }
    for (int i = 0; i < n; ++i) {
        coef[i] /= colscale[i];
    }

    double res = 0.0, scale = 0.0;
    for (int r = 0; r < R; ++r) {
        double acc = -rhs[r];
        for (int i = 0; i < n; ++i) {
            acc += rows[r][i] * coef[i];
        }
        res = std::max(res, std::abs(acc));
        scale = std::max({scale, std::abs(rhs[r]), 1.0});
    }
    double rel = res / scale;
    if (relative_residual) {
        *relative_residual = rel;
    }
    if (rel > 1e-6) {
        throw NoSolution("recover_projective_field: relative residual " + std::to_string(rel) +
                         " at degree " + std::to_string(degree) +
                         "; no polynomial field realizes these eigenvalues");
    }

    auto poly = [monos, m](std::vector<double> c) {
        return field_from([monos, c, m](const auto& X, const auto& Y) {
            auto acc = 0.0 * X;
            for (int t = 0; t < m; ++t) {
                auto term = 0.0 * X + c[t];
                for (int a = 0; a < monos[t][0]; ++a) {
                    term = term * X;
                }
                for (int b = 0; b < monos[t][1]; ++b) {
                    term = term * Y;
                }
                acc = acc + term;
            }
            return acc;
        });
    };
    VectorField2 X;
    X.X1 = poly(std::vector<double>(coef.begin(), coef.begin() + m));
    X.X2 = poly(std::vector<double>(coef.begin() + m, coef.end()));
    return X;
}

}  // namespace projconn
