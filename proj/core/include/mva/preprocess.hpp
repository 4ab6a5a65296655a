#ifndef MVA_PREPROCESS_HPP
#define MVA_PREPROCESS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mva/classifier.hpp"
#include "mva/stats.hpp"

namespace mva {

// Two-sample pooled-variance t screening. t_j = X_j / sqrt(c * V_j); two-sided
// p-value from the t distribution with n1 + n2 - 2 degrees of freedom; kept
// when p < alpha. A feature with V_j = 0 gets t = +-inf (kept) unless
// X_j = 0 too, in which case t = 0, p = 1 (dropped).
struct ScreeningResult {
    std::vector<std::size_t> kept_indices; // increasing; { j : p_values[j] < alpha }
    std::vector<double> t_stats;
    std::vector<double> p_values;
    double alpha = 0.2;
};

ScreeningResult t_test_screen(const LabeledMatrix& data, double alpha = 0.2);

// Per-feature affine map fitted on training data: subtract min, divide by
// range; constant features map to 0. Values outside the training range map
// outside [0, 1], which is allowed.
struct MinMaxTransform {
    std::vector<double> min;
    std::vector<double> max;
};

MinMaxTransform fit_min_max(const LabeledMatrix& train);
LabeledMatrix apply_min_max(const MinMaxTransform& tf, LabeledMatrix data);
std::vector<double> apply_min_max_row(const MinMaxTransform& tf, std::span<const double> x);

struct LoocvOptions {
    Method method = Method::MVA; // MVA or NB
    SolverConfig solver;
    double alpha = 0.2;
    bool screen = true;
    bool screen_per_fold = true; // false screens once on the full data
    bool min_max = false;
};

struct LoocvResult {
    double rate = 0.0;
    std::size_t completed_folds = 0;
    std::size_t skipped_folds = 0;
    std::size_t mislabeled = 0;
};

// Leave-one-out cross-validation. Screening and scaling are refit inside each
// fold by default. A fold whose training part would leave a class below two
// samples (or with no features kept) is skipped with a warning on stderr and
// the rate is taken over completed folds.
LoocvResult loocv(const LabeledMatrix& data, const LoocvOptions& options = {});

} // namespace mva

#endif
