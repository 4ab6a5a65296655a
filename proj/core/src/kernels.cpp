#include "mva/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "mva/numeric.hpp"
#include "mva/parallel.hpp"

namespace mva {

namespace {
constexpr double half_log_two_pi = 0.91893853320467274178; // log(2*pi)/2
}

KernelContext::KernelContext(int dof_, double var_scale_) : dof(dof_), var_scale(var_scale_) {
    if (dof < 1) {
        throw std::invalid_argument("KernelContext: dof must be at least 1");
    }
    if (!(var_scale > 0.0)) {
        throw std::invalid_argument("KernelContext: var_scale must be positive");
    }
    log_gamma_half_dof = std::lgamma(0.5 * static_cast<double>(dof));
}

double log_f_v(double v, double sigma2, const KernelContext& ctx) {
    if (!(sigma2 > 0.0)) {
        throw std::invalid_argument("log_f_v: sigma2 must be positive");
    }
    if (!(v >= 0.0)) {
        throw std::invalid_argument("log_f_v: v must be nonnegative");
    }
    const double m = static_cast<double>(ctx.dof);
    const double half_m = 0.5 * m;
    if (v == 0.0) {
        if (ctx.dof == 2) {
            return std::log(m / (2.0 * sigma2)); // exponential density at the origin
        }
        return ctx.dof > 2 ? neg_inf : pos_inf;
    }
    return half_m * std::log(m / (2.0 * sigma2)) + (half_m - 1.0) * std::log(v) - m * v / (2.0 * sigma2) -
           ctx.log_gamma_half_dof;
}

double log_f_xv(double x, double v, double mu, double sigma2, const KernelContext& ctx) {
    if (!(sigma2 > 0.0)) {
        throw std::invalid_argument("log_f_xv: sigma2 must be positive");
    }
    const double s2 = ctx.var_scale * sigma2;
    const double d = x - mu;
    return -half_log_two_pi - 0.5 * std::log(s2) - d * d / (2.0 * s2) + log_f_v(v, sigma2, ctx);
}

Matrix log_likelihood_matrix_v(const FeatureSummary& summary, std::span<const double> grid) {
    if (grid.empty()) {
        throw std::invalid_argument("log_likelihood_matrix_v: empty grid");
    }
    for (double g : grid) {
        if (!(g > 0.0)) {
            throw std::invalid_argument("log_likelihood_matrix_v: grid points must be positive");
        }
    }
    const KernelContext ctx = KernelContext::from(summary);
    const std::size_t p = summary.dim();
    Matrix out(p, grid.size());
    parallel_for(p, [&](std::size_t j) {
        const double v = summary.pooled_var[j];
        auto row = out.row(j);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            row[k] = log_f_v(v, grid[k], ctx);
        }
    });
    return out;
}

} // namespace mva
