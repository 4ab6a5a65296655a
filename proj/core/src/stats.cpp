#include "mva/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mva/errors.hpp"

namespace mva {

void validate(const LabeledMatrix& data) {
    if (data.values.size() != data.rows * data.cols) {
        throw validation_error("labeled matrix: value buffer does not match rows x cols");
    }
    if (data.labels.size() != data.rows) {
        throw validation_error("labeled matrix: label count does not match row count");
    }
    if (!data.feature_names.empty() && data.feature_names.size() != data.cols) {
        throw validation_error("labeled matrix: feature name count does not match column count");
    }
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    for (std::size_t i = 0; i < data.rows; ++i) {
        const int y = data.labels[i];
        if (y == 1) {
            ++n1;
        } else if (y == 2) {
            ++n2;
        } else {
            throw validation_error("sample " + std::to_string(i + 1) + ": label must be 1 or 2, got " +
                                   std::to_string(y));
        }
    }
    if (n1 < 2) {
        throw validation_error("class 1 has " + std::to_string(n1) + " sample(s); at least 2 required");
    }
    if (n2 < 2) {
        throw validation_error("class 2 has " + std::to_string(n2) + " sample(s); at least 2 required");
    }
    for (std::size_t i = 0; i < data.rows; ++i) {
        for (std::size_t j = 0; j < data.cols; ++j) {
            if (!std::isfinite(data.at(i, j))) {
                throw validation_error("non-finite value at sample " + std::to_string(i + 1) + ", feature " +
                                       std::to_string(j + 1));
            }
        }
    }
}

FeatureSummary summarize(const LabeledMatrix& data) {
    validate(data);
    const std::size_t p = data.cols;

    FeatureSummary s;
    s.mean_g1.assign(p, 0.0);
    s.mean_g2.assign(p, 0.0);
    for (std::size_t i = 0; i < data.rows; ++i) {
        auto& acc = data.labels[i] == 1 ? s.mean_g1 : s.mean_g2;
        const auto row = data.row(i);
        for (std::size_t j = 0; j < p; ++j) {
            acc[j] += row[j];
        }
        (data.labels[i] == 1 ? s.n1 : s.n2)++;
    }
    for (std::size_t j = 0; j < p; ++j) {
        s.mean_g1[j] /= static_cast<double>(s.n1);
        s.mean_g2[j] /= static_cast<double>(s.n2);
    }

    s.x_diff.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        s.x_diff[j] = s.mean_g1[j] - s.mean_g2[j];
    }

    s.pooled_var.assign(p, 0.0);
    for (std::size_t i = 0; i < data.rows; ++i) {
        const auto& mean = data.labels[i] == 1 ? s.mean_g1 : s.mean_g2;
        const auto row = data.row(i);
        for (std::size_t j = 0; j < p; ++j) {
            const double d = row[j] - mean[j];
            s.pooled_var[j] += d * d;
        }
    }
    s.dof = static_cast<int>(s.n1 + s.n2) - 2;
    for (std::size_t j = 0; j < p; ++j) {
        s.pooled_var[j] /= static_cast<double>(s.dof);
    }
    s.var_scale = static_cast<double>(s.n1 + s.n2) / (static_cast<double>(s.n1) * static_cast<double>(s.n2));
    return s;
}

double variance_floor(std::span<const double> pooled_var) {
    double vmax = 0.0;
    for (double v : pooled_var) {
        vmax = std::max(vmax, v);
    }
    return 1e-12 * vmax;
}

LabeledMatrix select_columns(const LabeledMatrix& data, std::span<const std::size_t> keep) {
    for (std::size_t j : keep) {
        if (j >= data.cols) {
            throw std::out_of_range("select_columns: column index out of range");
        }
    }
    LabeledMatrix out;
    out.rows = data.rows;
    out.cols = keep.size();
    out.labels = data.labels;
    out.values.resize(out.rows * out.cols);
    for (std::size_t i = 0; i < data.rows; ++i) {
        for (std::size_t jj = 0; jj < keep.size(); ++jj) {
            out.at(i, jj) = data.at(i, keep[jj]);
        }
    }
    if (!data.feature_names.empty()) {
        out.feature_names.reserve(keep.size());
        for (std::size_t j : keep) {
            out.feature_names.push_back(data.feature_names[j]);
        }
    }
    return out;
}

LabeledMatrix drop_row(const LabeledMatrix& data, std::size_t row) {
    if (row >= data.rows) {
        throw std::out_of_range("drop_row: row index out of range");
    }
    LabeledMatrix out;
    out.rows = data.rows - 1;
    out.cols = data.cols;
    out.feature_names = data.feature_names;
    out.values.reserve(out.rows * out.cols);
    out.labels.reserve(out.rows);
    for (std::size_t i = 0; i < data.rows; ++i) {
        if (i == row) {
            continue;
        }
        const auto r = data.row(i);
        out.values.insert(out.values.end(), r.begin(), r.end());
        out.labels.push_back(data.labels[i]);
    }
    return out;
}

} // namespace mva
