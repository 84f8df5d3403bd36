#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "cscrack/numerics.hpp"

namespace cscrack {

enum class CaseTag { I, II, III };

struct BranchData {
    double b0 = 0.0;
    cplx b1;
    cplx b2;
    CaseTag case_tag = CaseTag::I;
    int a = 0;

    // End of the cut on the positive imaginary axis.
    double top() const { return a == 1 ? b1.real() : b0; }
};

struct KernelContext {
    double m = 0.0;
    double nu = 0.0;
    double h0 = 0.0;
    double d = 1.0;
    double B = 1.0;  // 1 - m^2 h0^2
    BranchData branch;
};

BranchData branch_points(double m, double nu, double h0);
KernelContext make_kernel_context(double m, double nu, double h0);

// |Re z| below this counts as lying on the imaginary axis.
inline constexpr double kCutTolerance = 1e-10;

bool on_cut(cplx z, const KernelContext& ctx);

cplx chi(cplx z, double m, double h0);
cplx beta(cplx z, double m, double h0);
cplx gamma(cplx z, double m, double h0);
cplx alpha(cplx z, double m, double nu);
cplx theta(cplx z, double m, double h0);

cplx kernel_K(cplx z, const KernelContext& ctx);
cplx kernel_N(cplx z, const KernelContext& ctx);
// Defined everywhere: analytic value off the cut, right-side limit on it.
cplx kernel_N_right(cplx z, const KernelContext& ctx);
double kernel_N0(const KernelContext& ctx);

enum class Segment { Lower, Upper };

struct CutValue {
    double re;
    double im;
};

CutValue n_on_cut(double y, Segment segment, const KernelContext& ctx);

// m -> 0 limit of N (stationary crack), and its on-cut values on (0, 1).
cplx static_kernel_N(cplx z, double nu);
cplx static_kernel_N_right(cplx z, double nu);
CutValue static_n_on_cut(double y, double nu);

enum class FactorKind { Dynamic, Static, Classical };

struct FactorNode {
    double y;
    double w;
    double phi;
};

struct FactorSegment {
    double a;
    double b;
    std::vector<FactorNode> nodes;
};

// log N+(z) = log_const - (1/pi) sum_k w_k phi_k / (y_k - i z)
struct FactorizationTable {
    FactorKind kind = FactorKind::Dynamic;
    KernelContext ctx;
    double nu = 0.0;
    double log_const = 0.0;
    std::vector<FactorSegment> segments;

    std::size_t size() const;
    cplx kernel(cplx z) const;
};

using TablePtr = std::shared_ptr<const FactorizationTable>;

struct FactorSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
};

FactorizationTable factorize(const KernelContext& ctx, const FactorSpec& spec = {});
FactorizationTable factorize_static(double nu, const FactorSpec& spec = {});
// l -> 0 limit: N is the constant N(0), so both factors are sqrt(N(0)).
FactorizationTable factorize_classical(const KernelContext& ctx);

cplx n_plus(cplx z, const FactorizationTable& table);
cplx n_minus(cplx z, const FactorizationTable& table);

// Stationary-crack N+ evaluated directly from its closed form by quadrature.
cplx static_n_plus(cplx z, double nu, const QuadSpec& spec = {1e-12, 1e-12, 400});

// Argument-principle count of zeros of N inside a large rectangle with a slot cut
// out around the branch cuts.
int verify_no_zeros(const KernelContext& ctx);
struct WindingReport {
    double outer;
    double slot;
    int zeros;
};
WindingReport winding_report(const KernelContext& ctx, double slot_halfwidth, double extent);

}  // namespace cscrack
