#include "cscrack/numerics.hpp"

#include <algorithm>
#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>

namespace cscrack {

void validate(const QuadSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) throw ConfigError("quadrature tolerances must be positive");
    if (spec.max_subdivisions < 1) throw ConfigError("max_subdivisions must be at least 1");
}

cplx sqrt_principal(cplx w) {
    if (w.imag() == 0.0) {
        if (w.real() >= 0.0) return {std::sqrt(w.real()), 0.0};
        return {0.0, std::sqrt(-w.real())};
    }
    return std::sqrt(w);
}

cplx half_power_plus(cplx z) {
    static const cplx rot = std::polar(1.0, kPi / 4.0);
    return rot * sqrt_principal(cplx(0.0, -1.0) * z);
}

cplx half_power_minus(cplx z) {
    static const cplx rot = std::polar(1.0, -kPi / 4.0);
    return rot * sqrt_principal(cplx(0.0, 1.0) * z);
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b, const QuadSpec& spec, Singular sing) {
    validate(spec);
    return integrate_singular(f, a, b, spec, sing);
}

namespace {

// Repeated pairwise means of the trailing partial sums.
cplx averaged(const std::vector<cplx>& sums, std::size_t n) {
    std::vector<cplx> v(sums.end() - static_cast<std::ptrdiff_t>(n + 1), sums.end());
    for (std::size_t level = 0; level < n; ++level)
        for (std::size_t i = 0; i + 1 < v.size() - level; ++i) v[i] = 0.5 * (v[i] + v[i + 1]);
    return v[0];
}

// integral over (0, inf) of G(s) exp(-i w s) ds
cplx half_line(const std::function<cplx(double)>& G, double w, const QuadSpec& spec, const IftOptions& opts) {
    const double P = kPi / std::abs(w);
    double s1 = std::max(opts.smooth_after, P);
    s1 = std::ceil(s1 / P - 1e-9) * P;
    auto integrand = [&](double s) { return G(s) * std::exp(cplx(0.0, -w * s)); };

    QuadSpec inner = spec;
    inner.abs_tol = 0.25 * spec.abs_tol;
    inner.rel_tol = 0.25 * spec.rel_tol;

    const double c = std::min(1.0, s1);
    cplx head = integrate([&](double t) { return 2.0 * t * integrand(t * t); }, 0.0, std::sqrt(c), inner);
    if (s1 > c) {
        const double span = (s1 - c) / (2.0 * P);
        const int pieces = static_cast<int>(std::clamp(std::ceil(span), 1.0, 200000.0));
        QuadSpec body = inner;
        body.max_subdivisions = std::max(spec.max_subdivisions, pieces);
        head += integrate(integrand, c, s1, body, pieces);
    }

    QuadSpec panel = inner;
    panel.abs_tol = 1e-2 * spec.abs_tol;
    std::vector<cplx> sums{head};
    cplx prev{};
    int calm = 0;
    for (int k = 0; k < opts.max_panels; ++k) {
        const double lo = s1 + k * P;
        sums.push_back(sums.back() + integrate(integrand, lo, lo + P, panel));
        if (sums.size() < 4) continue;
        const std::size_t n = std::min<std::size_t>(sums.size() - 1, 12);
        const cplx est = averaged(sums, n);
        if (std::abs(est - prev) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(est)) * 0.1) {
            if (++calm >= 2) return est;
        } else {
            calm = 0;
        }
        prev = est;
    }
    throw NonConvergence("oscillatory tail did not settle within the panel limit");
}

}  // namespace

double oscillatory_ift(const std::function<cplx(double)>& F, double X, const QuadSpec& spec, const IftOptions& opts) {
    validate(spec);
    if (X == 0.0 || !std::isfinite(X)) throw DomainError("oscillatory_ift: X must be finite and nonzero");
    const cplx right = half_line(F, X, spec, opts);
    const cplx left = half_line([&](double s) { return F(-s); }, -X, spec, opts);
    const cplx total = (right + left) / (2.0 * kPi);
    if (std::abs(total.imag()) > 100.0 * spec.abs_tol)
        throw NonRealResult("inverse transform has imaginary part " + std::to_string(total.imag()));
    return total.real();
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw DomainError("find_root: need lo < hi");
    const double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(flo * fhi < 0.0)) throw NoSignChange("find_root: no sign change on the bracket");
    std::uintmax_t iters = 200;
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace cscrack
