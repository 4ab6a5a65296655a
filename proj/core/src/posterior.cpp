#include "mva/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mva/numeric.hpp"
#include "mva/parallel.hpp"

namespace mva {

namespace {

struct ActiveComponents {
    std::vector<double> value;      // support points with positive weight
    std::vector<double> log_weight; // their log weights

    explicit ActiveComponents(const DiscreteMixing& mix) {
        for (std::size_t k = 0; k < mix.size(); ++k) {
            if (mix.weights[k] > 0.0) {
                value.push_back(mix.support[k]);
                log_weight.push_back(std::log(mix.weights[k]));
            }
        }
    }
};

double posterior_sigma2_unchecked(double v, const ActiveComponents& f, const DiscreteMixing& f_hat,
                                  const KernelContext& ctx) {
    if (v == 0.0 && ctx.dof >= 3) {
        return f_hat.support.front();
    }
    double m = neg_inf;
    std::vector<double> t(f.value.size());
    for (std::size_t k = 0; k < f.value.size(); ++k) {
        t[k] = f.log_weight[k] + log_f_v(v, f.value[k], ctx);
        m = std::max(m, t[k]);
    }
    if (m == neg_inf) {
        // Every kernel value underflowed: v is beyond the representable tail,
        // where the largest support point dominates.
        return f_hat.support.back();
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < f.value.size(); ++k) {
        const double e = std::exp(t[k] - m);
        num += f.value[k] * e;
        den += e;
    }
    return std::clamp(num / den, f_hat.support.front(), f_hat.support.back());
}

double posterior_mu_unchecked(double x, double v, const ActiveComponents& f, const ActiveComponents& g,
                              const DiscreteMixing& g_hat, const KernelContext& ctx) {
    const std::size_t nk = f.value.size();

    // Variance-kernel part, common to every mean grid point. Its overall
    // shift cancels between numerator and denominator, which also defines
    // the v -> 0+ limit for dof >= 3 (relative weights v_k^(-m/2)).
    std::vector<double> lfv(nk);
    if (v == 0.0 && ctx.dof >= 3) {
        for (std::size_t k = 0; k < nk; ++k) {
            lfv[k] = -0.5 * static_cast<double>(ctx.dof) * std::log(f.value[k]);
        }
    } else {
        for (std::size_t k = 0; k < nk; ++k) {
            lfv[k] = log_f_v(v, f.value[k], ctx);
        }
    }
    double fv_max = neg_inf;
    for (double t : lfv) {
        fv_max = std::max(fv_max, t);
    }
    if (fv_max == neg_inf) {
        std::fill(lfv.begin(), lfv.end(), 0.0);
    } else {
        for (double& t : lfv) {
            t -= fv_max;
        }
    }

    std::vector<double> log_norm(nk), inv_2cs(nk), base(nk), terms(nk);
    for (std::size_t k = 0; k < nk; ++k) {
        const double cs = ctx.var_scale * f.value[k];
        log_norm[k] = -0.5 * std::log(2.0 * M_PI * cs);
        inv_2cs[k] = 1.0 / (2.0 * cs);
        base[k] = f.log_weight[k] + lfv[k] + log_norm[k];
    }

    const std::size_t nl = g.value.size();
    std::vector<double> t(nl);
    double m = neg_inf;
    for (std::size_t l = 0; l < nl; ++l) {
        const double d = x - g.value[l];
        for (std::size_t k = 0; k < nk; ++k) {
            terms[k] = base[k] - d * d * inv_2cs[k];
        }
        t[l] = g.log_weight[l] + log_sum_exp(terms);
        m = std::max(m, t[l]);
    }
    double num_pos = 0.0;
    double num_neg = 0.0;
    double den = 0.0;
    for (std::size_t l = 0; l < nl; ++l) {
        const double e = std::exp(t[l] - m);
        den += e;
        if (g.value[l] >= 0.0) {
            num_pos += g.value[l] * e;
        } else {
            num_neg += -g.value[l] * e;
        }
    }
    return std::clamp((num_pos - num_neg) / den, g_hat.support.front(), g_hat.support.back());
}

} // namespace

double posterior_sigma2(double v, const DiscreteMixing& f_hat, const KernelContext& ctx) {
    f_hat.validate(true);
    if (!(v >= 0.0)) {
        throw std::invalid_argument("posterior_sigma2: v must be nonnegative");
    }
    return posterior_sigma2_unchecked(v, ActiveComponents(f_hat), f_hat, ctx);
}

double posterior_mu(double x, double v, const DiscreteMixing& f_hat, const DiscreteMixing& g_hat,
                    const KernelContext& ctx) {
    f_hat.validate(true);
    g_hat.validate(false);
    if (!(v >= 0.0)) {
        throw std::invalid_argument("posterior_mu: v must be nonnegative");
    }
    if (!std::isfinite(x)) {
        throw std::invalid_argument("posterior_mu: x must be finite");
    }
    return posterior_mu_unchecked(x, v, ActiveComponents(f_hat), ActiveComponents(g_hat), g_hat, ctx);
}

double marginal_density_v(double v, const DiscreteMixing& f_hat, const KernelContext& ctx) {
    f_hat.validate(true);
    if (!(v >= 0.0)) {
        throw std::invalid_argument("marginal_density_v: v must be nonnegative");
    }
    std::vector<double> t;
    t.reserve(f_hat.size());
    for (std::size_t k = 0; k < f_hat.size(); ++k) {
        if (f_hat.weights[k] > 0.0) {
            t.push_back(std::log(f_hat.weights[k]) + log_f_v(v, f_hat.support[k], ctx));
        }
    }
    return std::exp(log_sum_exp(t));
}

PosteriorEstimates estimate_all(const FeatureSummary& summary, const DiscreteMixing& f_hat,
                                const DiscreteMixing& g_hat) {
    f_hat.validate(true);
    g_hat.validate(false);
    const KernelContext ctx = KernelContext::from(summary);
    const ActiveComponents f(f_hat);
    const ActiveComponents g(g_hat);
    const std::size_t p = summary.dim();

    PosteriorEstimates est;
    est.mu_hat.resize(p);
    est.sigma2_hat.resize(p);
    parallel_for(p, [&](std::size_t j) {
        est.sigma2_hat[j] = posterior_sigma2_unchecked(summary.pooled_var[j], f, f_hat, ctx);
        est.mu_hat[j] = posterior_mu_unchecked(summary.x_diff[j], summary.pooled_var[j], f, g, g_hat, ctx);
    });
    return est;
}

} // namespace mva
