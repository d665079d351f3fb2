#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "projconn/errors.hpp"

namespace projconn {

// Deterministic uniform stream.  std::uniform_real_distribution is
// implementation-defined, so reports would not be reproducible across
// standard libraries; this maps the raw 64-bit stream directly.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

  private:
    std::mt19937_64 eng_;
};

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct Mat2 {
    // row-major: a b / c d
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    double det() const {
        return a * d - b * c;
    }
    double trace() const {
        return a + d;
    }
    double norm() const {
        return std::sqrt(a * a + b * b + c * c + d * d);
    }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Vec2 operator*(const Vec2& v) const {
        return {a * v.x + b * v.y, c * v.x + d * v.y};
    }
    Mat2 operator*(double s) const {
        return {a * s, b * s, c * s, d * s};
    }
    Mat2 inverse() const {
        double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
};

// Adaptive Simpson quadrature.  Integrand must be smooth on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
    struct Rec {
        const std::function<double(double)>& f;
        int max_depth;
        double run(double a, double fa, double b, double fb, double m, double fm, double whole,
                   double tol, int depth) const {
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            double delta = left + right - whole;
            if (depth >= max_depth) {
                throw QuadratureFailure("adaptive_simpson: subdivision limit reached");
            }
            if (std::abs(delta) <= 15.0 * tol) {
                return left + right + delta / 15.0;
            }
            return run(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
                   run(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
        }
    };
    if (a == b) {
        return 0.0;
    }
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    Rec rec{f, max_depth};
    return rec.run(a, fa, b, fb, m, fm, whole, tol, 0);
}

// Cyclic Jacobi eigendecomposition of a small dense symmetric matrix
// (row-major, n x n).  Eigenvalues come back ascending, eigenvector j in
// column j of evecs (evecs[i * n + j]).
inline void jacobi_eigen_sym(std::vector<double> A, int n, std::vector<double>& evals,
                             std::vector<double>& evecs) {
    evecs.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        evecs[i * n + i] = 1.0;
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < n; ++i) {
            diag += std::abs(A[i * n + i]);
            for (int j = i + 1; j < n; ++j) {
                off += std::abs(A[i * n + j]);
            }
        }
        if (off <= 1e-15 * std::max(diag, 1e-300) || off == 0.0) {
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                double app = A[p * n + p], aqq = A[q * n + q];
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cth = 1.0 / std::sqrt(1.0 + t * t), sth = t * cth;
                for (int k = 0; k < n; ++k) {
                    double akp = A[k * n + p], akq = A[k * n + q];
                    A[k * n + p] = cth * akp - sth * akq;
                    A[k * n + q] = sth * akp + cth * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A[p * n + k], aqk = A[q * n + k];
                    A[p * n + k] = cth * apk - sth * aqk;
                    A[q * n + k] = sth * apk + cth * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = evecs[k * n + p], vkq = evecs[k * n + q];
                    evecs[k * n + p] = cth * vkp - sth * vkq;
                    evecs[k * n + q] = sth * vkp + cth * vkq;
                }
            }
        }
    }
    evals.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        evals[i] = A[i * n + i];
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return A[i * n + i] < A[j * n + j]; });
    std::vector<double> ev(n), V = evecs;
    for (int j = 0; j < n; ++j) {
        ev[j] = A[order[j] * n + order[j]];
        for (int i = 0; i < n; ++i) {
            evecs[i * n + j] = V[i * n + order[j]];
        }
    }
    evals = ev;
}

}  // namespace projconn
