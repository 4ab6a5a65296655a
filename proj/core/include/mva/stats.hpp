#ifndef MVA_STATS_HPP
#define MVA_STATS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mva {

// Two-class sample: n rows by p features with labels in {1, 2}.
struct LabeledMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;              // row-major, rows x cols
    std::vector<int> labels;                 // length rows
    std::vector<std::string> feature_names;  // empty, or length cols

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
};

// Throws validation_error unless shapes agree, every label is 1 or 2, each
// class has at least two samples, and every value is finite.
void validate(const LabeledMatrix& data);

// Per-feature sufficient statistics of a two-class sample.
//   x_diff[j]     = mean_g1[j] - mean_g2[j]
//   pooled_var[j] = pooled sample variance with divisor n1 + n2 - 2
//   dof           = n1 + n2 - 2
//   var_scale     = (n1 + n2) / (n1 * n2), the variance scale of x_diff
struct FeatureSummary {
    std::vector<double> x_diff;
    std::vector<double> pooled_var;
    std::vector<double> mean_g1;
    std::vector<double> mean_g2;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    int dof = 0;
    double var_scale = 0.0;

    std::size_t dim() const { return x_diff.size(); }
};

FeatureSummary summarize(const LabeledMatrix& data);

// Clamp floor applied to zero pooled variances: 1e-12 * max_j V_j.
// Affects only grid construction and the naive-Bayes denominator; reported
// statistics keep their exact values.
double variance_floor(std::span<const double> pooled_var);

// Column / row subsetting used by screening and cross-validation.
LabeledMatrix select_columns(const LabeledMatrix& data, std::span<const std::size_t> keep);
LabeledMatrix drop_row(const LabeledMatrix& data, std::size_t row);

} // namespace mva

#endif
