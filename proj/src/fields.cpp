#include "cscrack/fields.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "cscrack/errors.hpp"

namespace cscrack {

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::SigmaYX:
            return "sigma_yx";
        case Quantity::UX:
            return "u_x";
        case Quantity::MXZ:
            return "m_xz";
    }
    return "?";
}

namespace {

IftOptions ift_options(const WHSolution& sol) {
    IftOptions o;
    double scale = 1.0;
    if (sol.kind == SolutionKind::Dynamic) scale = std::max(1.0, sol.ctx.branch.top());
    o.smooth_after = 20.0 * scale;
    return o;
}

}  // namespace

cplx m_xz_transform(double s, const WHSolution& sol) {
    if (sol.kind == SolutionKind::Classical) throw DomainError("m_xz vanishes identically in the classical limit");
    const double m = sol.ctx.m;
    const double r = std::abs(s);
    const double B = sol.kind == SolutionKind::Dynamic ? sol.ctx.B : 1.0;
    const double th = std::sqrt(1.0 - m * m + B * s * s);
    const double S = std::sqrt((r + th) * (r + th) + m * m);
    return cplx(0.0, -2.0 * (2.0 - m * m) * s * r / (S * th)) * u_transform(s, sol);
}

double sigma_yx_line(double X, const WHSolution& sol, const FieldOptions& opts) {
    if (!(X > 0.0)) throw DomainError("sigma_yx is sampled ahead of the tip, X > 0");
    if (X < opts.asymptote_below) return near_tip_sigma(X, sol);
    return oscillatory_ift([&](double s) { return sigma_transform(s, sol); }, X, opts.spec, ift_options(sol));
}

double u_x_line(double X, const WHSolution& sol, const FieldOptions& opts) {
    if (!(X < 0.0)) throw DomainError("u_x is sampled on the crack faces, X < 0");
    if (-X < opts.asymptote_below) return near_tip_u(X, sol);
    return oscillatory_ift([&](double s) { return u_transform(s, sol); }, X, opts.spec, ift_options(sol));
}

double m_xz_line(double X, const WHSolution& sol, const FieldOptions& opts) {
    if (!(X > 0.0)) throw DomainError("m_xz is sampled ahead of the tip, X > 0");
    return oscillatory_ift([&](double s) { return s == 0.0 ? cplx(0.0) : m_xz_transform(s, sol); }, X, opts.spec,
                           ift_options(sol));
}

double sigma_yx_resultant(const WHSolution& sol, const FieldOptions& opts, double X_max) {
    const double tip = 1e-4;
    if (!(X_max > 10.0 * tip)) throw DomainError("resultant needs X_max well beyond the tip region");
    double total = 2.0 * near_tip_sigma(1.0, sol) * std::sqrt(tip);
    FieldOptions quad = opts;
    quad.asymptote_below = 0.0;
    const auto& x = boost::math::quadrature::gauss<double, 20>::abscissa();
    const auto& w = boost::math::quadrature::gauss<double, 20>::weights();
    // X sigma(X) is smooth in u = ln X; one panel per decade.
    const double u0 = std::log(tip), u1 = std::log(X_max);
    const int panels = static_cast<int>(std::ceil((u1 - u0) / std::log(10.0)));
    const double hu = (u1 - u0) / panels;
    auto g = [&](double u) {
        const double X = std::exp(u);
        return X * sigma_yx_line(X, sol, quad);
    };
    for (int p = 0; p < panels; ++p) {
        const double c = u0 + (p + 0.5) * hu, h = 0.5 * hu;
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                acc += w[i] * g(c);
                continue;
            }
            acc += w[i] * (g(c - h * x[i]) + g(c + h * x[i]));
        }
        total += acc * h;
    }
    // sigma ~ A X^{-3/2} + B X^{-5/2} beyond X_max
    const double X1 = 0.5 * X_max, X2 = X_max;
    const double s1 = sigma_yx_line(X1, sol, quad) * std::pow(X1, 1.5);
    const double s2 = sigma_yx_line(X2, sol, quad) * std::pow(X2, 1.5);
    const double B = (s1 - s2) / (1.0 / X1 - 1.0 / X2);
    const double A = s2 - B / X2;
    return total + 2.0 * A / std::sqrt(X_max) + (2.0 / 3.0) * B / std::pow(X_max, 1.5);
}

double field_value(Quantity q, double X, const WHSolution& sol, const FieldOptions& opts) {
    switch (q) {
        case Quantity::SigmaYX:
            return sigma_yx_line(X, sol, opts);
        case Quantity::UX:
            return u_x_line(X, sol, opts);
        case Quantity::MXZ:
            return m_xz_line(X, sol, opts);
    }
    return 0.0;
}

double normalized(Quantity q, double raw, const WHSolution& sol) {
    return q == Quantity::SigmaYX ? raw * sol.L / sol.T0 : raw / sol.T0;
}

std::vector<FieldSample> curve(Quantity q, const std::vector<double>& X_grid, const WHSolution& sol,
                               const FieldOptions& opts, int threads) {
    std::vector<FieldSample> out(X_grid.size());
    auto eval = [&](std::size_t i) {
        FieldSample& fs = out[i];
        fs.X_over_ell = X_grid[i];
        fs.quantity = q;
        try {
            fs.value = normalized(q, field_value(q, X_grid[i], sol, opts), sol);
        } catch (const Error& e) {
            fs.value = std::nan("");
            fs.error = e.what();
        }
    };
    const std::size_t n = X_grid.size();
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) eval(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) eval(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace cscrack
