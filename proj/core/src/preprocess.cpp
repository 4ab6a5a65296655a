#include "mva/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "mva/errors.hpp"
#include "mva/numeric.hpp"

namespace mva {

ScreeningResult t_test_screen(const LabeledMatrix& data, double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 1.0)) {
        throw std::invalid_argument("t_test_screen: alpha must lie in (0, 1]");
    }
    const FeatureSummary s = summarize(data);
    const boost::math::students_t dist(static_cast<double>(s.dof));

    ScreeningResult res;
    res.alpha = alpha;
    res.t_stats.resize(s.dim());
    res.p_values.resize(s.dim());
    for (std::size_t j = 0; j < s.dim(); ++j) {
        const double x = s.x_diff[j];
        const double v = s.pooled_var[j];
        double t;
        double p;
        if (v == 0.0) {
            t = x == 0.0 ? 0.0 : (x > 0.0 ? pos_inf : neg_inf);
            p = x == 0.0 ? 1.0 : 0.0;
        } else {
            t = x / std::sqrt(s.var_scale * v);
            p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
        }
        res.t_stats[j] = t;
        res.p_values[j] = p;
        if (p < alpha) {
            res.kept_indices.push_back(j);
        }
    }
    return res;
}

MinMaxTransform fit_min_max(const LabeledMatrix& train) {
    validate(train);
    MinMaxTransform tf;
    tf.min.assign(train.cols, pos_inf);
    tf.max.assign(train.cols, neg_inf);
    for (std::size_t i = 0; i < train.rows; ++i) {
        const auto row = train.row(i);
        for (std::size_t j = 0; j < train.cols; ++j) {
            tf.min[j] = std::min(tf.min[j], row[j]);
            tf.max[j] = std::max(tf.max[j], row[j]);
        }
    }
    return tf;
}

namespace {

double scale_one(const MinMaxTransform& tf, std::size_t j, double x) {
    const double range = tf.max[j] - tf.min[j];
    return range > 0.0 ? (x - tf.min[j]) / range : 0.0;
}

} // namespace

LabeledMatrix apply_min_max(const MinMaxTransform& tf, LabeledMatrix data) {
    if (tf.min.size() != data.cols) {
        throw validation_error("apply_min_max: transform fitted on a different feature count");
    }
    for (std::size_t i = 0; i < data.rows; ++i) {
        for (std::size_t j = 0; j < data.cols; ++j) {
            data.at(i, j) = scale_one(tf, j, data.at(i, j));
        }
    }
    return data;
}

std::vector<double> apply_min_max_row(const MinMaxTransform& tf, std::span<const double> x) {
    if (tf.min.size() != x.size()) {
        throw validation_error("apply_min_max_row: transform fitted on a different feature count");
    }
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = scale_one(tf, j, x[j]);
    }
    return out;
}

LoocvResult loocv(const LabeledMatrix& data, const LoocvOptions& options) {
    validate(data);
    if (options.method == Method::ORACLE) {
        throw validation_error("loocv: method must be mva or nb");
    }

    std::vector<std::size_t> global_kept;
    if (options.screen && !options.screen_per_fold) {
        global_kept = t_test_screen(data, options.alpha).kept_indices;
    }

    LoocvResult res;
    for (std::size_t i = 0; i < data.rows; ++i) {
        LabeledMatrix fold = drop_row(data, i);
        const std::size_t n1 = static_cast<std::size_t>(std::count(fold.labels.begin(), fold.labels.end(), 1));
        const std::size_t n2 = fold.labels.size() - n1;
        if (n1 < 2 || n2 < 2) {
            std::cerr << "loocv: skipping fold " << i + 1 << " (class " << data.labels[i]
                      << " would drop below 2 training samples)\n";
            ++res.skipped_folds;
            continue;
        }

        std::vector<double> x(data.row(i).begin(), data.row(i).end());
        if (options.screen) {
            const std::vector<std::size_t>& kept =
                options.screen_per_fold ? t_test_screen(fold, options.alpha).kept_indices : global_kept;
            if (kept.empty()) {
                std::cerr << "loocv: skipping fold " << i + 1 << " (screening kept no features)\n";
                ++res.skipped_folds;
                continue;
            }
            fold = select_columns(fold, kept);
            std::vector<double> xs(kept.size());
            for (std::size_t jj = 0; jj < kept.size(); ++jj) {
                xs[jj] = x[kept[jj]];
            }
            x = std::move(xs);
        }
        if (options.min_max) {
            const MinMaxTransform tf = fit_min_max(fold);
            fold = apply_min_max(tf, std::move(fold));
            x = apply_min_max_row(tf, x);
        }

        const FittedModel model =
            options.method == Method::MVA ? fit_mva(fold, options.solver) : fit_naive_bayes(fold);
        if (predict(model, x) != data.labels[i]) {
            ++res.mislabeled;
        }
        ++res.completed_folds;
    }

    if (res.completed_folds == 0) {
        throw validation_error("loocv: every fold was skipped");
    }
    res.rate = static_cast<double>(res.mislabeled) / static_cast<double>(res.completed_folds);
    return res;
}

} // namespace mva
