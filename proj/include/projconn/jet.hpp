#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace projconn {

// Truncated second-order Taylor expansion of a scalar function of two
// variables.  Slots hold plain partial derivatives (dxy = d2/dxdy, no
// factorial weights).  The component type T may itself be a Jet2, which
// yields third and fourth derivatives of the underlying function, or a
// complex type for holomorphic work.
template <class T>
struct Jet2 {
    T v{}, dx{}, dy{}, dxx{}, dxy{}, dyy{};

    Jet2() = default;
    Jet2(const T& value) : v(value) {}  // constant jet
    template <class U, class = std::enable_if_t<std::is_constructible_v<T, U> && !std::is_same_v<U, T>>>
    Jet2(const U& value) : v(T(value)) {}

    Jet2& operator+=(const Jet2& o) {
        v += o.v;
        dx += o.dx;
        dy += o.dy;
        dxx += o.dxx;
        dxy += o.dxy;
        dyy += o.dyy;
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        v -= o.v;
        dx -= o.dx;
        dy -= o.dy;
        dxx -= o.dxx;
        dxy -= o.dxy;
        dyy -= o.dyy;
        return *this;
    }
};

template <class T>
struct is_jet : std::false_type {};
template <class T>
struct is_jet<Jet2<T>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

using Jet2d = Jet2<double>;
using Jet2c = Jet2<std::complex<double>>;
using Jet4d = Jet2<Jet2d>;  // nested: second derivatives of second derivatives
using Jet4c = Jet2<Jet2c>;

// ---- arithmetic ----

template <class T>
Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
    Jet2<T> r = a;
    r += b;
    return r;
}
template <class T>
Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
    Jet2<T> r = a;
    r -= b;
    return r;
}
template <class T>
Jet2<T> operator-(const Jet2<T>& a) {
    Jet2<T> r;
    r.v = -a.v;
    r.dx = -a.dx;
    r.dy = -a.dy;
    r.dxx = -a.dxx;
    r.dxy = -a.dxy;
    r.dyy = -a.dyy;
    return r;
}
template <class T>
Jet2<T> operator+(const Jet2<T>& a) {
    return a;
}

template <class T>
Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
    Jet2<T> r;
    r.v = a.v * b.v;
    r.dx = a.dx * b.v + a.v * b.dx;
    r.dy = a.dy * b.v + a.v * b.dy;
    r.dxx = a.dxx * b.v + a.dx * b.dx + a.dx * b.dx + a.v * b.dxx;
    r.dxy = a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy;
    r.dyy = a.dyy * b.v + a.dy * b.dy + a.dy * b.dy + a.v * b.dyy;
    return r;
}

// univariate chain rule: r = f(a) given f(a.v), f'(a.v), f''(a.v)
template <class T>
Jet2<T> jet_chain(const Jet2<T>& a, const T& f0, const T& f1, const T& f2) {
    Jet2<T> r;
    r.v = f0;
    r.dx = f1 * a.dx;
    r.dy = f1 * a.dy;
    r.dxx = f2 * a.dx * a.dx + f1 * a.dxx;
    r.dxy = f2 * a.dx * a.dy + f1 * a.dxy;
    r.dyy = f2 * a.dy * a.dy + f1 * a.dyy;
    return r;
}

template <class T>
Jet2<T> inverse(const Jet2<T>& a) {
    T one = T(1.0);
    T iv = one / a.v;
    T iv2 = iv * iv;
    return jet_chain(a, iv, -iv2, T(2.0) * iv2 * iv);
}

template <class T>
Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
    return a * inverse(b);
}

// mixed jet/scalar operators (scalar = anything convertible to T that is not a jet)
#define PROJCONN_MIXED_OP(op)                                                                      \
    template <class T, class U, class = std::enable_if_t<!is_jet_v<U> && std::is_constructible_v<T, U>>> \
    Jet2<T> operator op(const Jet2<T>& a, const U& s) {                                            \
        return a op Jet2<T>(T(s));                                                                 \
    }                                                                                              \
    template <class T, class U, class = std::enable_if_t<!is_jet_v<U> && std::is_constructible_v<T, U>>> \
    Jet2<T> operator op(const U& s, const Jet2<T>& a) {                                            \
        return Jet2<T>(T(s)) op a;                                                                 \
    }
PROJCONN_MIXED_OP(+)
PROJCONN_MIXED_OP(-)
PROJCONN_MIXED_OP(*)
PROJCONN_MIXED_OP(/)
#undef PROJCONN_MIXED_OP

// ---- elementary functions (recursive over nesting level) ----

using std::atan;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T>
Jet2<T> exp(const Jet2<T>& a) {
    T e = exp(a.v);
    return jet_chain(a, e, e, e);
}

template <class T>
Jet2<T> log(const Jet2<T>& a) {
    T one = T(1.0);
    T iv = one / a.v;
    return jet_chain(a, log(a.v), iv, -iv * iv);
}

template <class T>
Jet2<T> sin(const Jet2<T>& a) {
    T s = sin(a.v), c = cos(a.v);
    return jet_chain(a, s, c, -s);
}

template <class T>
Jet2<T> cos(const Jet2<T>& a) {
    T s = sin(a.v), c = cos(a.v);
    return jet_chain(a, c, -s, -c);
}

template <class T>
Jet2<T> tan(const Jet2<T>& a) {
    T t = tan(a.v);
    T sec2 = T(1.0) + t * t;
    return jet_chain(a, t, sec2, T(2.0) * t * sec2);
}

template <class T>
Jet2<T> atan(const Jet2<T>& a) {
    T one = T(1.0);
    T d = one / (one + a.v * a.v);
    return jet_chain(a, atan(a.v), d, T(-2.0) * a.v * d * d);
}

template <class T>
Jet2<T> sqrt(const Jet2<T>& a) {
    T r = sqrt(a.v);
    T d1 = T(0.5) / r;
    return jet_chain(a, r, d1, T(-0.5) * d1 / a.v);
}

template <class T>
Jet2<T> pow(const Jet2<T>& a, double p) {
    T f0 = pow(a.v, p);
    T f1 = T(p) * pow(a.v, p - 1.0);
    T f2 = T(p * (p - 1.0)) * pow(a.v, p - 2.0);
    return jet_chain(a, f0, f1, f2);
}

// ---- value extraction and sign handling (real component chains only) ----

inline double value_of(double x) {
    return x;
}
template <class T>
double value_of(const Jet2<T>& a) {
    return value_of(a.v);
}

// |a| for jets whose scalar value is bounded away from zero
template <class T>
Jet2<T> abs(const Jet2<T>& a) {
    return value_of(a) < 0.0 ? -a : a;
}

// ---- coordinate seeds ----

inline Jet2d jet_x(double x) {
    Jet2d j;
    j.v = x;
    j.dx = 1.0;
    return j;
}
inline Jet2d jet_y(double y) {
    Jet2d j;
    j.v = y;
    j.dy = 1.0;
    return j;
}

inline Jet4d jet4_x(double x) {
    Jet4d j;
    j.v = jet_x(x);
    j.dx = Jet2d(1.0);
    return j;
}
inline Jet4d jet4_y(double y) {
    Jet4d j;
    j.v = jet_y(y);
    j.dy = Jet2d(1.0);
    return j;
}

// ---- complexification helpers for metrics assembled in complex arithmetic ----

inline std::complex<double> complexify(double x) {
    return {x, 0.0};
}
template <class T>
auto complexify(const Jet2<T>& a) {
    using C = decltype(complexify(a.v));
    Jet2<C> r;
    r.v = complexify(a.v);
    r.dx = complexify(a.dx);
    r.dy = complexify(a.dy);
    r.dxx = complexify(a.dxx);
    r.dxy = complexify(a.dxy);
    r.dyy = complexify(a.dyy);
    return r;
}

inline double real_part(const std::complex<double>& z) {
    return z.real();
}
inline double imag_part(const std::complex<double>& z) {
    return z.imag();
}
template <class T>
auto real_part(const Jet2<T>& a) {
    using R = decltype(real_part(a.v));
    Jet2<R> r;
    r.v = real_part(a.v);
    r.dx = real_part(a.dx);
    r.dy = real_part(a.dy);
    r.dxx = real_part(a.dxx);
    r.dxy = real_part(a.dxy);
    r.dyy = real_part(a.dyy);
    return r;
}

inline double imag_magnitude(const std::complex<double>& z) {
    return std::abs(z.imag());
}
template <class T>
double imag_magnitude(const Jet2<T>& a) {
    double m = imag_magnitude(a.v);
    m = std::max(m, imag_magnitude(a.dx));
    m = std::max(m, imag_magnitude(a.dy));
    m = std::max(m, imag_magnitude(a.dxx));
    m = std::max(m, imag_magnitude(a.dxy));
    m = std::max(m, imag_magnitude(a.dyy));
    return m;
}

}  // namespace projconn
