#ifndef MVA_KERNELS_HPP
#define MVA_KERNELS_HPP

#include <span>

#include "mva/matrix.hpp"
#include "mva/stats.hpp"

namespace mva {

// Distributional constants shared by both kernels: the pooled degrees of
// freedom m = n1 + n2 - 2 and the mean-difference variance scale
// c = (n1 + n2) / (n1 * n2). lgamma(m/2) is precomputed here so the hot
// evaluation paths stay free of library calls that are not thread-safe.
struct KernelContext {
    int dof;
    double var_scale;
    double log_gamma_half_dof;

    KernelContext(int dof, double var_scale);
    static KernelContext from(const FeatureSummary& s) { return {s.dof, s.var_scale}; }
};

// Log density at v >= 0 of (sigma2/m) * chisq_m, the conditional law of the
// pooled variance given sigma2:
//   (m/2) log(m / (2 sigma2)) + (m/2 - 1) log v - m v / (2 sigma2) - lgamma(m/2).
// At v = 0 the value is -inf for m >= 3 and -log(sigma2) for m = 2.
// Throws std::invalid_argument for sigma2 <= 0 or v < 0.
double log_f_v(double v, double sigma2, const KernelContext& ctx);

// log N(x; mu, c*sigma2) + log_f_v(v, sigma2): the joint kernel of the
// mean-difference / pooled-variance pair.
double log_f_xv(double x, double v, double mu, double sigma2, const KernelContext& ctx);

// Entry (j, k) = log_f_v(V_j, grid[k]). Rows are independent and evaluated in
// parallel; output is identical to sequential evaluation. The grid must be
// nonempty with positive entries (duplicates allowed, producing equal columns).
Matrix log_likelihood_matrix_v(const FeatureSummary& summary, std::span<const double> grid);

} // namespace mva

#endif
