#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "mva/errors.hpp"
#include "mva/preprocess.hpp"

using namespace mva;

namespace {

// group1 = (1, 3), group2 = (0, 2) on one feature
LabeledMatrix toy() {
    return {4, 1, {1.0, 3.0, 0.0, 2.0}, {1, 1, 2, 2}, {}};
}

LabeledMatrix separable_1d() {
    LabeledMatrix d;
    d.rows = 8;
    d.cols = 1;
    d.values = {10.0, 11.0, 12.0, 13.0, 0.0, 1.0, 2.0, 3.0};
    d.labels = {1, 1, 1, 1, 2, 2, 2, 2};
    return d;
}

} // namespace

TEST_CASE("worked t statistic and p-value on the 2+2 example") {
    const ScreeningResult res = t_test_screen(toy(), 0.2);
    CHECK(res.t_stats[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    // independent closed form for dof = 2: two-sided p = 1 - t / sqrt(2 + t^2)
    const double t = res.t_stats[0];
    const double expected_p = 1.0 - t / std::sqrt(2.0 + t * t);
    CHECK(res.p_values[0] == doctest::Approx(expected_p).epsilon(1e-10));
    CHECK(res.p_values[0] == doctest::Approx(0.5528).epsilon(1e-4));
    CHECK(res.kept_indices.empty()); // dropped at alpha = 0.2
}

TEST_CASE("null feature has t = 0, p = 1 and is dropped") {
    LabeledMatrix d{4, 2, {1.0, 5.0, 3.0, 9.0, 0.0, 9.0, 2.0, 5.0}, {1, 1, 2, 2}, {}};
    const ScreeningResult res = t_test_screen(d, 0.99);
    CHECK(res.t_stats[1] == 0.0);
    CHECK(res.p_values[1] == 1.0);
    CHECK(std::find(res.kept_indices.begin(), res.kept_indices.end(), 1) == res.kept_indices.end());
}

TEST_CASE("zero-variance features: kept when the means differ, dropped otherwise") {
    // feature 0: constant within groups, different means -> infinite t
    // feature 1: constant everywhere -> t = 0
    LabeledMatrix d{4, 2, {1.0, 7.0, 1.0, 7.0, 0.0, 7.0, 0.0, 7.0}, {1, 1, 2, 2}, {}};
    const ScreeningResult res = t_test_screen(d, 0.2);
    CHECK(std::isinf(res.t_stats[0]));
    CHECK(res.p_values[0] == 0.0);
    CHECK(res.p_values[1] == 1.0);
    CHECK(res.kept_indices == std::vector<std::size_t>{0});
}

TEST_CASE("alpha = 1 keeps everything with p < 1; tiny alpha keeps nothing finite") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z(0.0, 1.0);
    LabeledMatrix d;
    d.rows = 12;
    d.cols = 10;
    d.values.resize(120);
    for (double& v : d.values) {
        v = z(rng);
    }
    d.labels.assign(6, 1);
    d.labels.insert(d.labels.end(), 6, 2);

    const ScreeningResult all = t_test_screen(d, 1.0);
    CHECK(all.kept_indices.size() == 10); // p = 1 exactly is measure-zero here

    const ScreeningResult none = t_test_screen(d, 1e-12);
    CHECK(none.kept_indices.empty());

    CHECK_THROWS_AS(t_test_screen(d, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(t_test_screen(d, 1.5), std::invalid_argument);
}

TEST_CASE("screening decisions are invariant to per-feature affine rescaling") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> z(0.0, 1.0);
    LabeledMatrix d;
    d.rows = 14;
    d.cols = 8;
    d.values.resize(14 * 8);
    for (double& v : d.values) {
        v = z(rng);
    }
    for (std::size_t i = 0; i < 7; ++i) {
        d.at(i, 2) += 1.5; // plant one signal feature
    }
    d.labels.assign(7, 1);
    d.labels.insert(d.labels.end(), 7, 2);

    const ScreeningResult base = t_test_screen(d, 0.2);
    LabeledMatrix scaled = d;
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t j = 0; j < d.cols; ++j) {
            scaled.at(i, j) = scaled.at(i, j) * (3.0 + static_cast<double>(j)) - 7.0;
        }
    }
    const ScreeningResult after = t_test_screen(scaled, 0.2);
    CHECK(after.kept_indices == base.kept_indices);
    for (std::size_t j = 0; j < d.cols; ++j) {
        CHECK(after.p_values[j] == doctest::Approx(base.p_values[j]).epsilon(1e-9));
    }
}

TEST_CASE("min-max scaling: worked column, constant column, out-of-range values") {
    const LabeledMatrix train{4, 2, {0.0, 4.0, 5.0, 4.0, 10.0, 4.0, 10.0, 4.0}, {1, 1, 2, 2}, {}};
    const MinMaxTransform tf = fit_min_max(train);
    const LabeledMatrix scaled = apply_min_max(tf, train);
    CHECK(scaled.at(0, 0) == 0.0);
    CHECK(scaled.at(1, 0) == 0.5);
    CHECK(scaled.at(2, 0) == 1.0);
    CHECK(scaled.at(0, 1) == 0.0); // constant column maps to zero
    CHECK(scaled.at(3, 1) == 0.0);

    const std::vector<double> outside{20.0, 9.0};
    const std::vector<double> mapped = apply_min_max_row(tf, outside);
    CHECK(mapped[0] == 2.0); // outside [0, 1] is allowed
    CHECK(mapped[1] == 0.0);
}

TEST_CASE("loocv: separable data is perfectly classified by both methods") {
    LoocvOptions nb;
    nb.method = Method::NB;
    const LoocvResult r1 = loocv(separable_1d(), nb);
    CHECK(r1.rate == 0.0);
    CHECK(r1.completed_folds == 8);
    CHECK(r1.skipped_folds == 0);

    LoocvOptions mva_opts;
    mva_opts.method = Method::MVA;
    mva_opts.solver.grid_size_variance = 10;
    mva_opts.solver.grid_size_mean = 10;
    const LoocvResult r2 = loocv(separable_1d(), mva_opts);
    CHECK(r2.rate == 0.0);
}

TEST_CASE("loocv: label-independent features score near chance") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> z(0.0, 1.0);
    LabeledMatrix d;
    d.rows = 30;
    d.cols = 3;
    d.values.resize(90);
    for (double& v : d.values) {
        v = z(rng);
    }
    d.labels.assign(15, 1);
    d.labels.insert(d.labels.end(), 15, 2);
    LoocvOptions opts;
    opts.method = Method::NB;
    opts.screen = false;
    const LoocvResult res = loocv(d, opts);
    CHECK(res.rate > 0.15);
    CHECK(res.rate < 0.85);
}

TEST_CASE("loocv: folds that break the class minimum are skipped with the rate over the rest") {
    LabeledMatrix d{7, 1, {10.0, 11.0, 0.0, 1.0, 2.0, 0.5, 1.5}, {1, 1, 2, 2, 2, 2, 2}, {}};
    LoocvOptions opts;
    opts.method = Method::NB;
    opts.screen = false;
    const LoocvResult res = loocv(d, opts);
    CHECK(res.skipped_folds == 2); // both class-1 folds
    CHECK(res.completed_folds == 5);
    CHECK(res.rate == 0.0);
}

TEST_CASE("loocv: deterministic and independent of sample order") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> z(0.0, 1.0);
    LabeledMatrix d;
    d.rows = 16;
    d.cols = 4;
    d.values.resize(64);
    for (double& v : d.values) {
        v = z(rng);
    }
    for (std::size_t i = 0; i < 8; ++i) {
        d.at(i, 0) += 2.0;
    }
    d.labels.assign(8, 1);
    d.labels.insert(d.labels.end(), 8, 2);

    LoocvOptions opts;
    opts.method = Method::NB;
    const LoocvResult a = loocv(d, opts);
    const LoocvResult b = loocv(d, opts);
    CHECK(a.rate == b.rate);

    // reverse the sample order
    LabeledMatrix rev = d;
    for (std::size_t i = 0; i < d.rows; ++i) {
        rev.labels[i] = d.labels[d.rows - 1 - i];
        for (std::size_t j = 0; j < d.cols; ++j) {
            rev.at(i, j) = d.at(d.rows - 1 - i, j);
        }
    }
    const LoocvResult c = loocv(rev, opts);
    CHECK(c.rate == a.rate);
}

TEST_CASE("loocv: global screening flag and scaling flag run end to end") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> z(0.0, 1.0);
    LabeledMatrix d;
    d.rows = 14;
    d.cols = 6;
    d.values.resize(84);
    for (double& v : d.values) {
        v = z(rng);
    }
    for (std::size_t i = 0; i < 7; ++i) {
        d.at(i, 1) += 3.0;
    }
    d.labels.assign(7, 1);
    d.labels.insert(d.labels.end(), 7, 2);

    LoocvOptions global;
    global.method = Method::NB;
    global.screen_per_fold = false;
    global.min_max = true;
    const LoocvResult res = loocv(d, global);
    CHECK(res.rate >= 0.0);
    CHECK(res.rate <= 1.0);
    CHECK(res.completed_folds == 14);
}

TEST_CASE("loocv rejects the oracle method") {
    LoocvOptions opts;
    opts.method = Method::ORACLE;
    CHECK_THROWS_AS(loocv(separable_1d(), opts), validation_error);
}
