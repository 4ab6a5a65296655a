#ifndef MVA_POSTERIOR_HPP
#define MVA_POSTERIOR_HPP

#include <vector>

#include "mva/kernels.hpp"
#include "mva/npmle.hpp"
#include "mva/stats.hpp"

namespace mva {

// Plug-in posterior means under the fitted mixing distributions.
struct PosteriorEstimates {
    std::vector<double> mu_hat;
    std::vector<double> sigma2_hat; // positive, within the support range of f_hat
};

// E(sigma2 | V = v) under f_hat:
//   sum_k v_k w_k f_V(v | v_k) / sum_k w_k f_V(v | v_k),
// evaluated in log space with max-subtraction. At v = 0 with dof >= 3 every
// kernel value is zero; the smallest support point (the v -> 0+ limit) is
// returned so degenerate features stay classifiable.
double posterior_sigma2(double v, const DiscreteMixing& f_hat, const KernelContext& ctx);

// E(mu | X = x, V = v) under (f_hat, g_hat):
//   sum_l u_l w2_l sum_k w1_k f_XV(x, v | u_l, v_k) / (same without u_l).
// The numerator is not sign-definite, so its positive and negative parts are
// accumulated separately under a shared log-space shift.
double posterior_mu(double x, double v, const DiscreteMixing& f_hat, const DiscreteMixing& g_hat,
                    const KernelContext& ctx);

// Fitted marginal density of the pooled variance: sum_k w_k f_V(v | v_k).
double marginal_density_v(double v, const DiscreteMixing& f_hat, const KernelContext& ctx);

// Elementwise posterior means across all features; parallel over features
// with output identical to sequential evaluation.
PosteriorEstimates estimate_all(const FeatureSummary& summary, const DiscreteMixing& f_hat,
                                const DiscreteMixing& g_hat);

} // namespace mva

#endif
