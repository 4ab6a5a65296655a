#include "mva/npmle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mva/errors.hpp"
#include "mva/numeric.hpp"
#include "mva/parallel.hpp"

namespace mva {

namespace {

constexpr double weight_truncation = 1e-12;

void check_config(const SolverConfig& config) {
    if (config.max_iters < 1 || config.rel_tol <= 0.0 || config.grid_size_variance < 1 ||
        config.grid_size_mean < 1) {
        throw std::invalid_argument("SolverConfig: all fields must be positive");
    }
}

void check_grid(std::span<const double> grid, bool positive) {
    if (grid.empty()) {
        throw std::invalid_argument("grid must be nonempty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (positive && !(grid[i] > 0.0)) {
            throw std::invalid_argument("grid points must be positive");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("grid must be strictly increasing");
        }
    }
}

} // namespace

void DiscreteMixing::validate(bool positive_support) const {
    if (support.empty() || support.size() != weights.size()) {
        throw std::invalid_argument("DiscreteMixing: support and weights must be nonempty and equal-length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!std::isfinite(support[i])) {
            throw std::invalid_argument("DiscreteMixing: support points must be finite");
        }
        if (positive_support && !(support[i] > 0.0)) {
            throw std::invalid_argument("DiscreteMixing: support points must be positive");
        }
        if (i > 0 && !(support[i] > support[i - 1])) {
            throw std::invalid_argument("DiscreteMixing: support must be strictly increasing");
        }
        if (!(weights[i] >= 0.0)) {
            throw std::invalid_argument("DiscreteMixing: weights must be nonnegative");
        }
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw std::invalid_argument("DiscreteMixing: weights must sum to 1");
    }
}

std::vector<double> build_variance_grid(std::span<const double> pooled_var, int k) {
    if (pooled_var.empty()) {
        throw std::invalid_argument("build_variance_grid: empty input");
    }
    if (k < 1) {
        throw std::invalid_argument("build_variance_grid: grid size must be positive");
    }
    double vmin = pos_inf;
    double vmax = 0.0;
    for (double v : pooled_var) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!(vmax > 0.0)) {
        throw validation_error("build_variance_grid: every pooled variance is zero");
    }
    const double lo = std::max(vmin, 1e-12 * vmax);
    if (lo == vmax) {
        return {vmax};
    }
    return geomspace(lo, vmax, static_cast<std::size_t>(k));
}

std::vector<double> build_mean_grid(std::span<const double> x_diff, int l) {
    if (x_diff.empty()) {
        throw std::invalid_argument("build_mean_grid: empty input");
    }
    if (l < 1) {
        throw std::invalid_argument("build_mean_grid: grid size must be positive");
    }
    const auto [lo_it, hi_it] = std::minmax_element(x_diff.begin(), x_diff.end());
    if (*lo_it == *hi_it) {
        return {*lo_it};
    }
    return linspace(*lo_it, *hi_it, static_cast<std::size_t>(l));
}

SolverResult solve_mixture_weights(const Matrix& log_lik, const SolverConfig& config) {
    check_config(config);
    const std::size_t p = log_lik.rows;
    const std::size_t k = log_lik.cols;
    if (p == 0 || k == 0) {
        throw std::invalid_argument("solve_mixture_weights: likelihood matrix must be nonempty");
    }

    // Per-row max-subtraction; shifting a row changes the objective by a
    // constant and leaves the argmax weights unchanged.
    std::vector<double> shift(p);
    Matrix lik(p, k);
    for (std::size_t j = 0; j < p; ++j) {
        const auto row = log_lik.row(j);
        double m = neg_inf;
        for (double v : row) {
            m = std::max(m, v);
        }
        if (m == neg_inf) {
            throw validation_error("solve_mixture_weights: feature " + std::to_string(j + 1) +
                                   " has zero likelihood at every grid point");
        }
        shift[j] = m;
        auto out = lik.row(j);
        for (std::size_t c = 0; c < k; ++c) {
            out[c] = std::exp(row[c] - m);
        }
    }

    SolverResult res;
    res.weights.assign(k, 1.0 / static_cast<double>(k));
    std::vector<double> col_sum(k);

    // One fused pass per iteration: mixture density per row, objective, and
    // the responsibility column sums driving the multiplicative update.
    const auto sweep = [&](bool update) {
        double obj = 0.0;
        if (update) {
            std::fill(col_sum.begin(), col_sum.end(), 0.0);
        }
        for (std::size_t j = 0; j < p; ++j) {
            const auto row = lik.row(j);
            double denom = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                denom += res.weights[c] * row[c];
            }
            obj += std::log(denom) + shift[j];
            if (update) {
                for (std::size_t c = 0; c < k; ++c) {
                    col_sum[c] += row[c] / denom;
                }
            }
        }
        return obj / static_cast<double>(p);
    };

    double prev = sweep(true);
    res.objective_history.push_back(prev);
    for (int it = 1; it <= config.max_iters; ++it) {
        for (std::size_t c = 0; c < k; ++c) {
            res.weights[c] *= col_sum[c] / static_cast<double>(p);
        }
        res.iterations = it;
        const double obj = sweep(it < config.max_iters);
        res.objective_history.push_back(obj);
        if (obj - prev <= config.rel_tol * std::max(std::abs(prev), 1e-12)) {
            res.converged = true;
            break;
        }
        prev = obj;
    }

    for (double& w : res.weights) {
        if (w < weight_truncation) {
            w = 0.0;
        }
    }
    double total = 0.0;
    for (double w : res.weights) {
        total += w;
    }
    for (double& w : res.weights) {
        w /= total;
    }
    res.objective = mixture_objective(log_lik, res.weights);
    return res;
}

double mixture_objective(const Matrix& log_lik, std::span<const double> weights) {
    if (weights.size() != log_lik.cols) {
        throw std::invalid_argument("mixture_objective: weight length must match grid size");
    }
    std::vector<double> log_w(weights.size(), neg_inf);
    for (std::size_t c = 0; c < weights.size(); ++c) {
        if (weights[c] > 0.0) {
            log_w[c] = std::log(weights[c]);
        }
    }
    double obj = 0.0;
    std::vector<double> terms(weights.size());
    for (std::size_t j = 0; j < log_lik.rows; ++j) {
        const auto row = log_lik.row(j);
        for (std::size_t c = 0; c < weights.size(); ++c) {
            terms[c] = log_w[c] + row[c];
        }
        obj += log_sum_exp(terms);
    }
    return obj / static_cast<double>(log_lik.rows);
}

DiscreteMixing fit_variance_mixing(const FeatureSummary& summary, const SolverConfig& config,
                                   SolverResult* diagnostics) {
    check_config(config);
    const auto grid = build_variance_grid(summary.pooled_var, config.grid_size_variance);
    return fit_variance_mixing_on_grid(summary, grid, config, diagnostics);
}

DiscreteMixing fit_variance_mixing_on_grid(const FeatureSummary& summary, std::span<const double> grid,
                                           const SolverConfig& config, SolverResult* diagnostics) {
    check_grid(grid, true);
    const Matrix log_lik = log_likelihood_matrix_v(summary, grid);
    SolverResult res = solve_mixture_weights(log_lik, config);
    DiscreteMixing out{{grid.begin(), grid.end()}, res.weights};
    if (diagnostics) {
        *diagnostics = std::move(res);
    }
    return out;
}

DiscreteMixing fit_mean_mixing(const FeatureSummary& summary, const DiscreteMixing& f_hat,
                               const SolverConfig& config, SolverResult* diagnostics) {
    check_config(config);
    const auto grid = build_mean_grid(summary.x_diff, config.grid_size_mean);
    return fit_mean_mixing_on_grid(summary, f_hat, grid, config, diagnostics);
}

DiscreteMixing fit_mean_mixing_on_grid(const FeatureSummary& summary, const DiscreteMixing& f_hat,
                                       std::span<const double> grid, const SolverConfig& config,
                                       SolverResult* diagnostics) {
    check_grid(grid, false);
    f_hat.validate(true);
    const KernelContext ctx = KernelContext::from(summary);
    const std::size_t p = summary.dim();
    const std::size_t l = grid.size();

    // Variance components with positive weight; the rest contribute nothing.
    std::vector<double> log_w1, sigma2, log_norm, inv_2cs;
    for (std::size_t c = 0; c < f_hat.size(); ++c) {
        if (f_hat.weights[c] > 0.0) {
            const double s = f_hat.support[c];
            log_w1.push_back(std::log(f_hat.weights[c]));
            sigma2.push_back(s);
            const double cs = ctx.var_scale * s;
            log_norm.push_back(-0.5 * std::log(2.0 * M_PI * cs));
            inv_2cs.push_back(1.0 / (2.0 * cs));
        }
    }
    const std::size_t ka = sigma2.size();

    Matrix log_lik(p, l);
    parallel_for(p, [&](std::size_t j) {
        const double x = summary.x_diff[j];
        const double v = summary.pooled_var[j];
        std::vector<double> base(ka), terms(ka);
        for (std::size_t c = 0; c < ka; ++c) {
            base[c] = log_w1[c] + log_f_v(v, sigma2[c], ctx) + log_norm[c];
        }
        auto out = log_lik.row(j);
        for (std::size_t u = 0; u < l; ++u) {
            const double d = x - grid[u];
            for (std::size_t c = 0; c < ka; ++c) {
                terms[c] = base[c] - d * d * inv_2cs[c];
            }
            out[u] = log_sum_exp(terms);
        }
    });

    SolverResult res = solve_mixture_weights(log_lik, config);
    DiscreteMixing out{{grid.begin(), grid.end()}, res.weights};
    if (diagnostics) {
        *diagnostics = std::move(res);
    }
    return out;
}

} // namespace mva
