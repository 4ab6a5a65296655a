#ifndef MVA_NPMLE_HPP
#define MVA_NPMLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mva/kernels.hpp"
#include "mva/matrix.hpp"
#include "mva/stats.hpp"

namespace mva {

// A distribution with finitely many support points and simplex weights.
// Represents the fitted mixing distribution of either the variances (positive
// support) or the mean differences (any real support).
struct DiscreteMixing {
    std::vector<double> support; // strictly increasing
    std::vector<double> weights; // nonnegative, sum 1 within 1e-10

    std::size_t size() const { return support.size(); }

    // Throws std::invalid_argument on any violated invariant.
    void validate(bool positive_support) const;
};

struct SolverConfig {
    int max_iters = 2000;
    double rel_tol = 1e-8;       // relative objective change
    int grid_size_variance = 100; // K
    int grid_size_mean = 100;     // L
};

struct SolverResult {
    std::vector<double> weights;
    double objective = 0.0; // average log mixture likelihood at the returned weights
    int iterations = 0;
    bool converged = false; // false when stopped by the iteration cap
    // objective_history[0] is the value at the uniform start; one entry is
    // appended per multiplicative update. The iteration is monotone ascent.
    std::vector<double> objective_history;
};

// K points geometrically equispaced between max(min_j V_j, eps) and max_j V_j
// with eps = 1e-12 * max_j V_j; collapses to a single point when the range is
// empty. Throws validation_error when every V_j is zero.
std::vector<double> build_variance_grid(std::span<const double> pooled_var, int k);

// L points arithmetically equispaced on [min_j X_j, max_j X_j]; single point
// when the range is empty.
std::vector<double> build_mean_grid(std::span<const double> x_diff, int l);

// Maximizes (1/p) sum_j log sum_k w_k exp(log_lik(j, k)) over the weight
// simplex by the multiplicative fixed-point update
//   w_k <- w_k * (1/p) sum_j exp(log_lik(j, k)) / sum_k' w_k' exp(log_lik(j, k'))
// started from uniform weights. Rows are max-subtracted before
// exponentiation; a row whose entries are all -inf raises validation_error
// naming the feature. After convergence, weights below 1e-12 are zeroed and
// the vector renormalized.
SolverResult solve_mixture_weights(const Matrix& log_lik, const SolverConfig& config);

// Variance mixing distribution: grid from build_variance_grid, weights from
// solve_mixture_weights on the pooled-variance likelihood matrix.
DiscreteMixing fit_variance_mixing(const FeatureSummary& summary, const SolverConfig& config,
                                   SolverResult* diagnostics = nullptr);
DiscreteMixing fit_variance_mixing_on_grid(const FeatureSummary& summary, std::span<const double> grid,
                                           const SolverConfig& config, SolverResult* diagnostics = nullptr);

// Mean mixing distribution: for each feature j and mean grid point u_l the
// log likelihood is log sum_k w1_k f_xv(X_j, V_j | u_l, v_k), marginalizing
// the variance over the already-fitted f_hat.
DiscreteMixing fit_mean_mixing(const FeatureSummary& summary, const DiscreteMixing& f_hat,
                               const SolverConfig& config, SolverResult* diagnostics = nullptr);
DiscreteMixing fit_mean_mixing_on_grid(const FeatureSummary& summary, const DiscreteMixing& f_hat,
                                       std::span<const double> grid, const SolverConfig& config,
                                       SolverResult* diagnostics = nullptr);

// Objective value (1/p) sum_j log sum_k w_k exp(log_lik(j, k)) for an
// arbitrary feasible weight vector; shared by the solver and by tests that
// compare against candidate weights.
double mixture_objective(const Matrix& log_lik, std::span<const double> weights);

} // namespace mva

#endif
