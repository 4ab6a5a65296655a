#include "mva/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mva {

double log_sum_exp(std::span<const double> x) {
    double m = neg_inf;
    for (double v : x) {
        m = std::max(m, v);
    }
    if (m == neg_inf) {
        return neg_inf;
    }
    double sum = 0.0;
    for (double v : x) {
        sum += std::exp(v - m);
    }
    return m + std::log(sum);
}

namespace {

void drop_adjacent_duplicates(std::vector<double>& v) {
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("linspace: n must be positive");
    }
    if (n == 1 || lo == hi) {
        return {lo};
    }
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + static_cast<double>(i) * step;
    }
    out.front() = lo;
    out.back() = hi;
    drop_adjacent_duplicates(out);
    return out;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("geomspace: n must be positive");
    }
    if (!(lo > 0.0) || !(hi >= lo)) {
        throw std::invalid_argument("geomspace: requires 0 < lo <= hi");
    }
    if (n == 1 || lo == hi) {
        return {lo};
    }
    std::vector<double> out(n);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(log_lo + static_cast<double>(i) * step);
    }
    out.front() = lo;
    out.back() = hi;
    drop_adjacent_duplicates(out);
    return out;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::pair<double, double> mean_sd(std::span<const double> x) {
    if (x.empty()) {
        return {0.0, 0.0};
    }
    double mean = 0.0;
    for (double v : x) {
        mean += v;
    }
    mean /= static_cast<double>(x.size());
    if (x.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : x) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(x.size() - 1))};
}

} // namespace mva
