#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mva/errors.hpp"
#include "mva/kernels.hpp"
#include "mva/npmle.hpp"
#include "mva/numeric.hpp"
#include "support/simplex_search.hpp"
#include "support/test_random.hpp"

using namespace mva;

namespace {

FeatureSummary summary_with(std::vector<double> pooled_var, std::vector<double> x_diff, int dof,
                            double var_scale) {
    FeatureSummary s;
    s.pooled_var = std::move(pooled_var);
    s.x_diff = std::move(x_diff);
    s.mean_g1.assign(s.x_diff.size(), 0.0);
    s.mean_g2.assign(s.x_diff.size(), 0.0);
    s.n1 = s.n2 = 2;
    s.dof = dof;
    s.var_scale = var_scale;
    return s;
}

void check_history_ascends(const SolverResult& res) {
    for (std::size_t i = 1; i < res.objective_history.size(); ++i) {
        const double prev = res.objective_history[i - 1];
        CHECK(res.objective_history[i] >= prev - 1e-14 * (1.0 + std::abs(prev)));
    }
}

} // namespace

TEST_CASE("variance grid: geometric endpoints and collapse") {
    const std::vector<double> v{1.0, 100.0};
    const auto g3 = build_variance_grid(v, 3);
    REQUIRE(g3.size() == 3);
    CHECK(g3[0] == 1.0);
    CHECK(g3[1] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(g3[2] == 100.0);

    const auto g2 = build_variance_grid(v, 2);
    CHECK(g2 == std::vector<double>{1.0, 100.0});

    const std::vector<double> same{4.0, 4.0, 4.0};
    CHECK(build_variance_grid(same, 50) == std::vector<double>{4.0});

    const std::vector<double> zeros{0.0, 0.0};
    CHECK_THROWS_AS(build_variance_grid(zeros, 10), validation_error);
}

TEST_CASE("variance grid clamps zero variances to 1e-12 of the max") {
    const std::vector<double> v{0.0, 100.0};
    const auto g = build_variance_grid(v, 5);
    CHECK(g.front() == doctest::Approx(1e-10));
    CHECK(g.back() == 100.0);
    for (double x : g) {
        CHECK(x > 0.0);
    }
}

TEST_CASE("mean grid: arithmetic spacing and collapse") {
    const std::vector<double> x1{-1.0, 1.0};
    CHECK(build_mean_grid(x1, 3) == std::vector<double>{-1.0, 0.0, 1.0});

    const std::vector<double> x2{0.0, 10.0};
    CHECK(build_mean_grid(x2, 5) == std::vector<double>{0.0, 2.5, 5.0, 7.5, 10.0});

    const std::vector<double> x3{0.0, 0.0};
    CHECK(build_mean_grid(x3, 7) == std::vector<double>{0.0});

    CHECK_THROWS_AS(build_mean_grid(std::vector<double>{}, 3), std::invalid_argument);
}

TEST_CASE("solver: single dominant column takes all mass") {
    // p = 3 identical rows: log f_V(1 | 1) = -1, log f_V(1 | 5) = log(1/5) - 1/5
    Matrix log_lik(3, 2);
    for (std::size_t j = 0; j < 3; ++j) {
        log_lik(j, 0) = -1.0;
        log_lik(j, 1) = std::log(0.2) - 0.2;
    }
    const SolverResult res = solve_mixture_weights(log_lik, {});
    CHECK(res.weights[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.weights[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(res.objective == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(res.converged);
    check_history_ascends(res);
}

TEST_CASE("solver: K = 1 finishes after one update") {
    Matrix log_lik(4, 1);
    log_lik(0, 0) = -0.5;
    log_lik(1, 0) = -1.5;
    log_lik(2, 0) = -2.5;
    log_lik(3, 0) = -0.25;
    const SolverResult res = solve_mixture_weights(log_lik, {});
    CHECK(res.weights == std::vector<double>{1.0});
    CHECK(res.iterations == 1);
    CHECK(res.objective == doctest::Approx((-0.5 - 1.5 - 2.5 - 0.25) / 4.0));
}

TEST_CASE("solver: identical columns keep the symmetric split") {
    Matrix log_lik(5, 2);
    for (std::size_t j = 0; j < 5; ++j) {
        log_lik(j, 0) = log_lik(j, 1) = -0.3 * static_cast<double>(j + 1);
    }
    const SolverResult res = solve_mixture_weights(log_lik, {});
    CHECK(res.weights[0] == 0.5);
    CHECK(res.weights[1] == 0.5);
}

TEST_CASE("solver: all -inf row raises, naming the feature") {
    Matrix log_lik(3, 2, -1.0);
    log_lik(1, 0) = neg_inf;
    log_lik(1, 1) = neg_inf;
    CHECK_THROWS_WITH_AS(solve_mixture_weights(log_lik, {}), doctest::Contains("feature 2"), validation_error);
}

TEST_CASE("solver: monotone ascent, simplex output, beats uniform start") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> pdist(1, 30);
    std::uniform_int_distribution<std::size_t> kdist(1, 6);
    for (int rep = 0; rep < 50; ++rep) {
        const Matrix log_lik = testsupport::random_log_lik(rng, pdist(rng), kdist(rng), 9.0, true);
        const SolverResult res = solve_mixture_weights(log_lik, {});
        check_history_ascends(res);

        double sum = 0.0;
        for (double w : res.weights) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

        const std::vector<double> uniform(log_lik.cols, 1.0 / static_cast<double>(log_lik.cols));
        CHECK(res.objective >= mixture_objective(log_lik, uniform) - 1e-12);
    }
}

TEST_CASE("solver: matches dense simplex grid search within 1e-6") {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> pdist(2, 20);
    std::uniform_int_distribution<std::size_t> kdist(1, 4);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix log_lik = testsupport::random_log_lik(rng, pdist(rng), kdist(rng), 6.0, false);
        const SolverResult res = solve_mixture_weights(log_lik, {});
        const double brute = testsupport::brute_force_best_objective(log_lik, 100);
        CHECK(res.objective >= brute - 1e-6);
    }
}

TEST_CASE("solver: row shifts leave the weights unchanged") {
    std::mt19937_64 rng(303);
    const Matrix base = testsupport::random_log_lik(rng, 12, 4, 5.0, false);
    Matrix shifted = base;
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    for (std::size_t j = 0; j < shifted.rows; ++j) {
        const double c = u(rng);
        for (std::size_t k = 0; k < shifted.cols; ++k) {
            shifted(j, k) += c;
        }
    }
    // the argmax is shift-invariant; solve tightly so both runs stop near it
    SolverConfig tight;
    tight.rel_tol = 1e-13;
    tight.max_iters = 50000;
    const SolverResult a = solve_mixture_weights(base, tight);
    const SolverResult b = solve_mixture_weights(shifted, tight);
    for (std::size_t k = 0; k < a.weights.size(); ++k) {
        CHECK(b.weights[k] == doctest::Approx(a.weights[k]).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("solver: deterministic, bit-identical reruns") {
    std::mt19937_64 rng(404);
    const Matrix log_lik = testsupport::random_log_lik(rng, 25, 5, 8.0, true);
    const SolverResult a = solve_mixture_weights(log_lik, {});
    const SolverResult b = solve_mixture_weights(log_lik, {});
    CHECK(a.weights == b.weights);
    CHECK(a.objective == b.objective);
    CHECK(a.objective_history == b.objective_history);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("solver: iteration cap is reported, not an error") {
    std::mt19937_64 rng(505);
    const Matrix log_lik = testsupport::random_log_lik(rng, 30, 5, 8.0, false);
    SolverConfig config;
    config.max_iters = 3;
    const SolverResult res = solve_mixture_weights(log_lik, config);
    CHECK(res.iterations == 3);
    CHECK_FALSE(res.converged);
}

TEST_CASE("fit_variance_mixing: equal variances collapse to a point mass") {
    const FeatureSummary s = summary_with({3.0, 3.0, 3.0}, {0.0, 0.0, 0.0}, 2, 1.0);
    const DiscreteMixing f = fit_variance_mixing(s, {});
    CHECK(f.support == std::vector<double>{3.0});
    CHECK(f.weights == std::vector<double>{1.0});
}

TEST_CASE("fit_variance_mixing on forced grid (1, 5) puts all mass at the truth") {
    const FeatureSummary s = summary_with({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, 2, 1.0);
    const std::vector<double> grid{1.0, 5.0};
    SolverResult diag;
    const DiscreteMixing f = fit_variance_mixing_on_grid(s, grid, {}, &diag);
    CHECK(f.weights[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(diag.objective == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("fit_variance_mixing: objective at truth is a lower bound (two-point law)") {
    std::mt19937_64 rng(606);
    const int dof = 48;
    const std::size_t p = 400;
    std::vector<double> pv(p);
    std::vector<double> truth_w{0.0, 0.3, 0.0, 0.0, 0.7, 0.0};
    const std::vector<double> grid{0.5, 1.0, 2.0, 4.0, 6.0, 9.0};
    std::gamma_distribution<double> chi(dof / 2.0, 2.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (double& v : pv) {
        const double sigma2 = coin(rng) < 0.3 ? 1.0 : 6.0;
        v = sigma2 * chi(rng) / dof;
    }
    const FeatureSummary s = summary_with(std::move(pv), std::vector<double>(p, 0.0), dof, 0.08);

    SolverResult diag;
    fit_variance_mixing_on_grid(s, grid, {}, &diag);
    const Matrix log_lik = log_likelihood_matrix_v(s, grid);
    CHECK(diag.objective >= mixture_objective(log_lik, truth_w) - 1e-6);
    check_history_ascends(diag);
}

TEST_CASE("fit_mean_mixing: forced single-point grid is a point mass") {
    const FeatureSummary s = summary_with({1.0, 1.0}, {0.4, -0.2}, 2, 1.0);
    const DiscreteMixing f{{1.0}, {1.0}};
    const std::vector<double> grid{0.0};
    const DiscreteMixing g = fit_mean_mixing_on_grid(s, f, grid, {});
    CHECK(g.support == std::vector<double>{0.0});
    CHECK(g.weights == std::vector<double>{1.0});
}

TEST_CASE("fit_mean_mixing: symmetric data on a symmetric grid gives symmetric weights") {
    const FeatureSummary s = summary_with({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, 2, 1.0);
    const DiscreteMixing f{{1.0}, {1.0}};
    const std::vector<double> grid{-0.7, 0.0, 0.7};
    const DiscreteMixing g = fit_mean_mixing_on_grid(s, f, grid, {});
    CHECK(g.weights[0] == doctest::Approx(g.weights[2]).epsilon(1e-12));
}

TEST_CASE("fit_mean_mixing: objective at the true two-point weights is a lower bound") {
    std::mt19937_64 rng(707);
    const std::size_t p = 300;
    const double c = 0.5;
    std::vector<double> x(p), pv(p, 1.0);
    std::normal_distribution<double> z(0.0, std::sqrt(c));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t j = 0; j < p; ++j) {
        const double mu = coin(rng) < 0.5 ? 0.0 : 1.0;
        x[j] = mu + z(rng);
    }
    const FeatureSummary s = summary_with(std::move(pv), std::move(x), 2, c);
    const DiscreteMixing f{{1.0}, {1.0}};
    const std::vector<double> grid{-0.5, 0.0, 0.5, 1.0, 1.5};
    const std::vector<double> truth_w{0.0, 0.5, 0.0, 0.5, 0.0};

    SolverResult diag;
    fit_mean_mixing_on_grid(s, f, grid, {}, &diag);

    // Rebuild the same mean-grid log likelihood with the scalar kernels.
    const KernelContext ctx = KernelContext::from(s);
    Matrix log_lik(p, grid.size());
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t l = 0; l < grid.size(); ++l) {
            log_lik(j, l) = log_f_xv(s.x_diff[j], s.pooled_var[j], grid[l], 1.0, ctx);
        }
    }
    CHECK(diag.objective >= mixture_objective(log_lik, truth_w) - 1e-6);
}

TEST_CASE("mixing validation catches bad inputs") {
    DiscreteMixing ok{{1.0, 2.0}, {0.5, 0.5}};
    CHECK_NOTHROW(ok.validate(true));

    DiscreteMixing unsorted{{2.0, 1.0}, {0.5, 0.5}};
    CHECK_THROWS_AS(unsorted.validate(false), std::invalid_argument);

    DiscreteMixing nonpos{{0.0, 1.0}, {0.5, 0.5}};
    CHECK_THROWS_AS(nonpos.validate(true), std::invalid_argument);
    CHECK_NOTHROW(nonpos.validate(false));

    DiscreteMixing badsum{{1.0, 2.0}, {0.7, 0.5}};
    CHECK_THROWS_AS(badsum.validate(false), std::invalid_argument);

    DiscreteMixing negw{{1.0, 2.0}, {1.5, -0.5}};
    CHECK_THROWS_AS(negw.validate(false), std::invalid_argument);
}
