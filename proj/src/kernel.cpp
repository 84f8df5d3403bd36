#include "cscrack/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "cscrack/errors.hpp"
#include "cscrack/material.hpp"

namespace cscrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Geometry depends on (m, h0) only; nu enters through the regime check.
BranchData geometry(double m, double h0) {
    BranchData br;
    const double m2 = m * m;
    br.b0 = std::sqrt((1.0 - m2) / (1.0 - m2 * h0 * h0));
    if (h0 == 0.0) {
        br.b1 = 1.0 / (2.0 * m);
        br.b2 = kInf;
    } else if (h0 <= 1.0) {
        const double s = std::sqrt(1.0 - h0 * h0);
        br.b1 = 1.0 / (m * (1.0 + s));
        br.b2 = (1.0 + s) / (m * h0 * h0);
    } else {
        const double s = std::sqrt(h0 * h0 - 1.0);
        br.b1 = 1.0 / (m * cplx(1.0, s));
        br.b2 = cplx(1.0, s) / (m * h0 * h0);
    }
    if (h0 > 1.0) {
        br.case_tag = CaseTag::III;
        br.a = 0;
    } else {
        // sqrt(1 - sqrt(1 - h0^2))/h0 in a form that stays finite at h0 = 0;
        // equality belongs to case I.
        const double bound = 1.0 / std::sqrt(1.0 + std::sqrt(1.0 - h0 * h0));
        br.a = m > bound ? 1 : 0;
        br.case_tag = br.a ? CaseTag::II : CaseTag::I;
    }
    return br;
}

double top_of(double m, double h0) { return geometry(m, h0).top(); }

bool on_axis_cut(cplx z, double top) {
    const double y = std::abs(z.imag());
    return std::abs(z.real()) < kCutTolerance && y > 0.0 && y <= top;
}

// z^2, exact zero imaginary part on the imaginary axis.
cplx square(cplx w) {
    if (w.real() == 0.0) return {-w.imag() * w.imag(), 0.0};
    return w * w;
}

// Building blocks in the closed right half-plane, with r = [z^2]^{1/2} = w there.
struct Parts {
    cplx r, theta, S;
};

Parts parts(cplx w, double m, double B) {
    const cplx th = sqrt_principal(1.0 - m * m + B * square(w));
    const cplx u = w + th;
    cplx u2 = u * u;
    if (u.real() == 0.0) u2 = {-u.imag() * u.imag(), 0.0};
    return {w, th, sqrt_principal(u2 + m * m)};
}

cplx right_half(cplx z) { return z.real() < 0.0 ? -z : z; }

// Evaluate a right-half-plane formula with evenness for Re z < 0 and the
// Re z = +0 limit (via conjugate symmetry below the real axis) on the axis.
template <class F>
cplx even_right_limit(cplx z, F&& f) {
    if (z.real() > 0.0) return f(z);
    if (z.real() < 0.0) return f(-z);
    if (z.imag() >= 0.0) return f(cplx(0.0, z.imag()));
    return std::conj(f(cplx(0.0, -z.imag())));
}

cplx G(cplx w, const KernelContext& ctx) {
    const double m2 = ctx.m * ctx.m;
    const Parts p = parts(w, ctx.m, ctx.B);
    const cplx K = (p.theta * (p.r + p.theta) + m2) / (p.theta * p.S) - ctx.d;
    return K / (1.0 - ctx.d);
}

}  // namespace

BranchData branch_points(double m, double nu, double h0) {
    if (!(m > 0.0)) throw DomainError("branch_points requires m > 0");
    if (regime(m, nu, h0) != Regime::SubRayleigh) throw DomainError("branch_points: crack speed is not sub-Rayleigh");
    return geometry(m, h0);
}

KernelContext make_kernel_context(double m, double nu, double h0) {
    MaterialConfig mat{nu, h0, 1.0, 1.0};
    validate(mat);
    if (m == 0.0) throw QuasiStaticPath("m = 0: use the stationary-crack factorization");
    KernelContext ctx;
    ctx.m = m;
    ctx.nu = nu;
    ctx.h0 = h0;
    ctx.branch = branch_points(m, nu, h0);
    ctx.d = d_factor(m, nu);
    ctx.B = 1.0 - m * m * h0 * h0;
    return ctx;
}

bool on_cut(cplx z, const KernelContext& ctx) { return on_axis_cut(z, ctx.branch.top()); }

namespace {
void reject_cut(cplx z, double m, double h0, const char* who) {
    if (on_axis_cut(z, top_of(m, h0))) throw OnCutError(std::string(who) + ": argument lies on a branch cut");
}
}  // namespace

cplx theta(cplx z, double m, double h0) {
    reject_cut(z, m, h0, "theta");
    return parts(right_half(z), m, 1.0 - m * m * h0 * h0).theta;
}

cplx chi(cplx z, double m, double h0) {
    reject_cut(z, m, h0, "chi");
    const Parts p = parts(right_half(z), m, 1.0 - m * m * h0 * h0);
    const cplx D = sqrt_principal((p.theta - p.r) * (p.theta - p.r) + m * m);
    return p.S * D;
}

cplx beta(cplx z, double m, double h0) {
    reject_cut(z, m, h0, "beta");
    const Parts p = parts(right_half(z), m, 1.0 - m * m * h0 * h0);
    const cplx D = sqrt_principal((p.theta - p.r) * (p.theta - p.r) + m * m);
    return 0.5 * (p.S + D);
}

cplx gamma(cplx z, double m, double h0) {
    reject_cut(z, m, h0, "gamma");
    const Parts p = parts(right_half(z), m, 1.0 - m * m * h0 * h0);
    const cplx D = sqrt_principal((p.theta - p.r) * (p.theta - p.r) + m * m);
    return 0.5 * (p.S - D);
}

cplx alpha(cplx z, double m, double nu) {
    const double c = c_ratio(nu);
    if (std::abs(z.real()) < kCutTolerance && z.imag() != 0.0) throw OnCutError("alpha: argument lies on a branch cut");
    return std::sqrt(1.0 - m * m * c * c) * right_half(z);
}

cplx kernel_N_right(cplx z, const KernelContext& ctx) {
    return even_right_limit(z, [&](cplx w) { return G(w, ctx); });
}

cplx kernel_N(cplx z, const KernelContext& ctx) {
    if (on_cut(z, ctx)) throw OnCutError("kernel_N: argument lies on a branch cut");
    return kernel_N_right(z, ctx);
}

cplx kernel_K(cplx z, const KernelContext& ctx) { return kernel_N(z, ctx) * (1.0 - ctx.d); }

double kernel_N0(const KernelContext& ctx) {
    return (1.0 / std::sqrt(1.0 - ctx.m * ctx.m) - ctx.d) / (1.0 - ctx.d);
}

CutValue n_on_cut(double y, Segment segment, const KernelContext& ctx) {
    const double m = ctx.m, m2 = m * m, h0 = ctx.h0, B = ctx.B, d = ctx.d;
    const double y2 = y * y;
    if (segment == Segment::Lower) {
        if (!(y > 0.0 && y < ctx.branch.b0)) throw DomainError("n_on_cut: y outside the lower segment");
        const double A = 1.0 + B;
        const double chi2 = 1.0 - 2.0 * (2.0 - h0 * h0) * m2 * y2 + m2 * m2 * h0 * h0 * h0 * h0 * y2 * y2;
        const double X = std::sqrt(std::max(chi2, 0.0));
        const double th2 = 1.0 - m2 - B * y2;
        const double p = 1.0 - A * y2;
        // beta^2 gamma^2 = -y^2 theta^2; use it for whichever root would cancel.
        double b2, g2;
        if (p >= 0.0) {
            b2 = 0.5 * (p + X);
            g2 = -y2 * th2 / b2;
        } else {
            g2 = 0.5 * (p - X);
            b2 = -y2 * th2 / g2;
        }
        const double re = y * (th2 + m2 - g2) / ((1.0 - d) * std::sqrt(-g2) * (b2 - g2)) - d / (1.0 - d);
        const double im = -y * (th2 + m2 - b2) / ((1.0 - d) * std::sqrt(b2) * (b2 - g2));
        return {re, im};
    }
    if (ctx.branch.a != 1) throw DomainError("n_on_cut: the upper segment exists only in case II");
    if (!(y > ctx.branch.b0 && y < ctx.branch.b1.real())) throw DomainError("n_on_cut: y outside the upper segment");
    const double t = std::sqrt(B * y2 - (1.0 - m2));
    const double bg = -y * t;  // beta*gamma, with beta + gamma = S > 0
    const double S = std::sqrt(std::max(m2 - (y + t) * (y + t), 0.0));
    const double im = y * (-t * t + m2 + bg) / ((1.0 - d) * bg * S);
    return {-d / (1.0 - d), im};
}

cplx static_kernel_N_right(cplx z, double nu) {
    const double k = 4.0 * (1.0 - nu);
    return even_right_limit(z, [&](cplx w) {
        const cplx s = sqrt_principal(1.0 + square(w));
        // w^2 - w^3/s rewritten with s^2 - w^2 = 1
        return (1.0 + k * square(w) / (s * (s + w))) / (3.0 - 2.0 * nu);
    });
}

cplx static_kernel_N(cplx z, double nu) {
    if (on_axis_cut(z, 1.0)) throw OnCutError("static_kernel_N: argument lies on a branch cut");
    return static_kernel_N_right(z, nu);
}

CutValue static_n_on_cut(double y, double nu) {
    if (!(y > 0.0 && y < 1.0)) throw DomainError("static_n_on_cut: y outside (0, 1)");
    const double k = 4.0 * (1.0 - nu), den = 3.0 - 2.0 * nu;
    return {(1.0 - k * y * y) / den, k * y * y * y / (den * std::sqrt(1.0 - y * y))};
}

std::size_t FactorizationTable::size() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.nodes.size();
    return n;
}

cplx FactorizationTable::kernel(cplx z) const {
    switch (kind) {
        case FactorKind::Dynamic:
            return kernel_N_right(z, ctx);
        case FactorKind::Static:
            return static_kernel_N_right(z, nu);
        case FactorKind::Classical:
            return std::exp(2.0 * log_const);
    }
    return 1.0;
}

namespace {

FactorSegment build_segment(double a, double b, const std::function<double(double)>& phi, const FactorSpec& spec) {
    // y = a + (b-a) t^2 (3 - 2t) flattens square-root behavior at both ends.
    auto y_of = [a, b](double t) { return a + (b - a) * t * t * (3.0 - 2.0 * t); };
    auto dy = [a, b](double t) { return (b - a) * 6.0 * t * (1.0 - t); };
    auto proxy = [&](double t) {
        const double y = y_of(t);
        const double f = phi(y) * dy(t);
        return cplx(f, f / (y + 0.1));
    };
    std::vector<Interval> panels;
    const QuadSpec q{spec.abs_tol * std::max(1.0, b), spec.rel_tol, spec.max_subdivisions};
    integrate(proxy, 0.0, 1.0, q, 16, &panels);

    FactorSegment seg{a, b, {}};
    const auto& x = detail::GK15::nodes();
    const auto& wk = detail::GK15::kronrod();
    for (const auto& p : panels) {
        const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (int sgn : {-1, 1}) {
                if (i == 0 && sgn == 1) continue;
                const double t = c + sgn * h * x[i];
                const double y = y_of(t);
                seg.nodes.push_back({y, h * wk[i] * dy(t), phi(y)});
            }
        }
    }
    std::sort(seg.nodes.begin(), seg.nodes.end(), [](const FactorNode& l, const FactorNode& r) { return l.y < r.y; });
    for (std::size_t k = 1; k < seg.nodes.size(); ++k) {
        double& cur = seg.nodes[k].phi;
        const double prev = seg.nodes[k - 1].phi;
        while (cur - prev > kPi) cur -= 2.0 * kPi;
        while (cur - prev < -kPi) cur += 2.0 * kPi;
        if (std::abs(cur - prev) > 0.5 * kPi)
            throw AngleDiscontinuity("factorize: angle jumps by " + std::to_string(cur - prev) + " near y=" +
                                     std::to_string(seg.nodes[k].y));
    }
    return seg;
}

}  // namespace

FactorizationTable factorize(const KernelContext& ctx, const FactorSpec& spec) {
    if (ctx.m == 0.0) throw QuasiStaticPath("factorize: m = 0 has no dynamic factorization");
    FactorizationTable tab;
    tab.kind = FactorKind::Dynamic;
    tab.ctx = ctx;
    tab.nu = ctx.nu;
    auto angle = [&](Segment s) {
        return [&ctx, s](double y) {
            const CutValue v = n_on_cut(y, s, ctx);
            return std::atan2(v.im, v.re);
        };
    };
    tab.segments.push_back(build_segment(0.0, ctx.branch.b0, angle(Segment::Lower), spec));
    if (ctx.branch.a == 1 && ctx.branch.b1.real() > ctx.branch.b0)
        tab.segments.push_back(build_segment(ctx.branch.b0, ctx.branch.b1.real(), angle(Segment::Upper), spec));
    return tab;
}

FactorizationTable factorize_static(double nu, const FactorSpec& spec) {
    validate(MaterialConfig{nu, 0.0, 1.0, 1.0});
    FactorizationTable tab;
    tab.kind = FactorKind::Static;
    tab.nu = nu;
    tab.segments.push_back(build_segment(
        0.0, 1.0,
        [nu](double y) {
            const CutValue v = static_n_on_cut(y, nu);
            return std::atan2(v.im, v.re);
        },
        spec));
    return tab;
}

FactorizationTable factorize_classical(const KernelContext& ctx) {
    const double n0 = kernel_N0(ctx);
    if (!(n0 > 0.0)) throw DomainError("factorize_classical: N(0) must be positive below the classical Rayleigh speed");
    FactorizationTable tab;
    tab.kind = FactorKind::Classical;
    tab.ctx = ctx;
    tab.nu = ctx.nu;
    tab.log_const = 0.5 * std::log(n0);
    return tab;
}

namespace {

cplx log_n_plus_direct(cplx z, const FactorizationTable& tab) {
    cplx acc = 0.0;
    const cplx shift(z.imag(), -z.real());  // -i z
    for (const auto& seg : tab.segments)
        for (const auto& nd : seg.nodes) acc += nd.w * nd.phi / (nd.y + shift);
    return tab.log_const - acc / kPi;
}

}  // namespace

cplx n_plus(cplx z, const FactorizationTable& tab) {
    if (tab.kind == FactorKind::Classical) return std::exp(tab.log_const);
    if (z.imag() >= 0.0) return std::exp(log_n_plus_direct(z, tab));
    // Lower half-plane, including the factor's own cut: continue through N = N+ N-.
    return tab.kernel(z) / std::exp(log_n_plus_direct(-z, tab));
}

cplx n_minus(cplx z, const FactorizationTable& tab) { return n_plus(-z, tab); }

cplx static_n_plus(cplx z, double nu, const QuadSpec& spec) {
    validate(MaterialConfig{nu, 0.0, 1.0, 1.0});
    const double k = 4.0 * (1.0 - nu);
    const cplx shift(z.imag(), -z.real());
    auto f = [&](double q) -> cplx {
        const double ang = std::atan(std::sqrt(1.0 - q * q) * (1.0 - k * q * q) / (k * q * q * q));
        return ang / (q + shift);
    };
    const cplx integral = integrate_singular(f, 0.0, 1.0, spec, Singular::Both);
    return std::exp(integral / kPi) / sqrt_principal(1.0 + cplx(0.0, 1.0) / z);
}

namespace {

double arg_change(const std::function<cplx(cplx)>& N, cplx a, cplx b, int n) {
    double total = 0.0;
    std::function<double(cplx, cplx, cplx, cplx, int)> piece = [&](cplx za, cplx zb, cplx fa, cplx fb, int depth) {
        const double d = std::arg(fb / fa);
        if (std::abs(d) < 0.1 || depth > 40) return d;
        const cplx zm = 0.5 * (za + zb);
        const cplx fm = N(zm);
        return piece(za, zm, fa, fm, depth + 1) + piece(zm, zb, fm, fb, depth + 1);
    };
    cplx zp = a, fp = N(a);
    for (int k = 1; k <= n; ++k) {
        const cplx zk = a + (b - a) * (double(k) / n);
        const cplx fk = N(zk);
        total += piece(zp, zk, fp, fk, 0);
        zp = zk;
        fp = fk;
    }
    return total;
}

double loop_change(const std::function<cplx(cplx)>& N, const std::vector<cplx>& corners, int n) {
    double t = 0.0;
    for (std::size_t i = 0; i < corners.size(); ++i) t += arg_change(N, corners[i], corners[(i + 1) % corners.size()], n);
    return t;
}

}  // namespace

WindingReport winding_report(const KernelContext& ctx, double eps, double R) {
    const double T = ctx.branch.top() + eps;
    if (!(eps > kCutTolerance)) throw ContourOnCut("winding contour touches the branch cut");
    if (!(R > T)) throw ContourOnCut("outer contour must enclose the cuts");
    auto N = [&](cplx z) { return kernel_N_right(z, ctx); };
    const double outer = loop_change(N, {{R, -R}, {R, R}, {-R, R}, {-R, -R}}, 400) / (2.0 * kPi);
    const double slot = loop_change(N, {{eps, -T}, {eps, T}, {-eps, T}, {-eps, -T}}, 400) / (2.0 * kPi);
    const double count = outer - slot;
    const int zeros = static_cast<int>(std::lround(count));
    if (std::abs(count - zeros) > 0.05) throw NonConvergence("winding number is not close to an integer");
    return {outer, slot, zeros};
}

int verify_no_zeros(const KernelContext& ctx) {
    const double scale = std::max(1.0, ctx.branch.top());
    return winding_report(ctx, 1e-3, 1e3 * scale).zeros;
}

}  // namespace cscrack
