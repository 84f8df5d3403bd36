#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cscrack/errors.hpp"

namespace cscrack {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct QuadSpec {
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    int max_subdivisions = 400;
};

inline constexpr QuadSpec kInnerQuad{1e-8, 1e-8, 400};
inline constexpr QuadSpec kOscillatoryQuad{1e-6, 1e-6, 4000};

void validate(const QuadSpec& spec);

// Non-negative real part; a negative real argument maps to +i·sqrt(|w|)
// regardless of the sign of its zero imaginary part.
cplx sqrt_principal(cplx w);

// [z]_+^{1/2}: cut on the negative imaginary axis, arg z in (-pi/2, 3pi/2].
cplx half_power_plus(cplx z);
// [z]_-^{1/2}: cut on the positive imaginary axis, arg z in (-3pi/2, pi/2].
cplx half_power_minus(cplx z);

enum class Singular { None, Left, Right, Both };

struct Interval {
    double a;
    double b;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

struct GK15 {
    static const auto& nodes() { return boost::math::quadrature::gauss_kronrod<double, 15>::abscissa(); }
    static const auto& kronrod() { return boost::math::quadrature::gauss_kronrod<double, 15>::weights(); }
    static const auto& gauss() { return boost::math::quadrature::gauss<double, 7>::weights(); }
};

template <class T>
struct PanelResult {
    Interval iv;
    T value;
    double error;
    bool operator<(const PanelResult& o) const { return error < o.error; }
};

template <class T, class F>
PanelResult<T> gk15(F& f, double a, double b) {
    const auto& x = GK15::nodes();
    const auto& wk = GK15::kronrod();
    const auto& wg = GK15::gauss();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T k = wk[0] * fc;
    T g = wg[0] * fc;
    for (std::size_t i = 1; i < x.size(); ++i) {
        T s = f(c - h * x[i]) + f(c + h * x[i]);
        k += wk[i] * s;
        if (i % 2 == 0) g += wg[i / 2] * s;
    }
    return {{a, b}, k * h, magnitude((k - g) * h)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) bisection. `initial` pieces seed the
// partition; `panels`, when given, receives the final partition.
template <class F>
auto integrate(F&& f, double a, double b, const QuadSpec& spec, int initial = 1,
               std::vector<Interval>* panels = nullptr, double* error = nullptr) {
    using T = std::decay_t<decltype(f(a))>;
    if (!(a < b)) throw DomainError("integrate: need a < b");
    if (initial < 1) initial = 1;
    std::priority_queue<detail::PanelResult<T>> heap;
    T total{};
    double err = 0.0;
    const double h = (b - a) / initial;
    for (int i = 0; i < initial; ++i) {
        const double lo = a + i * h, hi = (i + 1 == initial) ? b : a + (i + 1) * h;
        auto r = detail::gk15<T>(f, lo, hi);
        total += r.value;
        err += r.error;
        heap.push(r);
    }
    int splits = 0;
    while (err > std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total))) {
        if (splits >= spec.max_subdivisions)
            throw NonConvergence("adaptive quadrature: subdivision limit reached");
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.iv.a + worst.iv.b);
        if (!(mid > worst.iv.a && mid < worst.iv.b))
            throw NonConvergence("adaptive quadrature: interval underflow");
        auto l = detail::gk15<T>(f, worst.iv.a, mid);
        auto r = detail::gk15<T>(f, mid, worst.iv.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++splits;
        // Running sums drift; refresh them once in a while.
        if (splits % 64 == 0) {
            auto copy = heap;
            total = T{};
            err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    if (!std::isfinite(detail::magnitude(total))) throw NonConvergence("adaptive quadrature: non-finite result");
    if (panels) {
        panels->clear();
        while (!heap.empty()) {
            panels->push_back(heap.top().iv);
            heap.pop();
        }
    }
    if (error) *error = err;
    return total;
}

// Same, with x = a + t^2 (or b - t^2) substitution at singular endpoints.
template <class F>
auto integrate_singular(F&& f, double a, double b, const QuadSpec& spec, Singular sing) {
    using T = std::decay_t<decltype(f(a))>;
    if (!(a < b)) throw DomainError("integrate: need a < b");
    switch (sing) {
        case Singular::None:
            return integrate(f, a, b, spec);
        case Singular::Left:
            return integrate([&](double t) -> T { return 2.0 * t * f(a + t * t); }, 0.0, std::sqrt(b - a), spec);
        case Singular::Right:
            return integrate([&](double t) -> T { return 2.0 * t * f(b - t * t); }, 0.0, std::sqrt(b - a), spec);
        case Singular::Both: {
            const double c = 0.5 * (a + b);
            QuadSpec half = spec;
            half.abs_tol *= 0.5;
            return integrate_singular(f, a, c, half, Singular::Left) + integrate_singular(f, c, b, half, Singular::Right);
        }
    }
    return T{};
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b, const QuadSpec& spec,
                     Singular sing = Singular::None);

struct IftOptions {
    // Beyond this wavenumber the amplitude is treated as smooth, so the tail
    // can be summed panel by panel with averaging.
    double smooth_after = 20.0;
    int max_panels = 200000;
};

// (1/2pi) * integral over the real line of F(s) exp(-i X s) ds.
double oscillatory_ift(const std::function<cplx(double)>& F, double X, const QuadSpec& spec,
                       const IftOptions& opts = {});

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace cscrack
