#ifndef MVA_NUMERIC_HPP
#define MVA_NUMERIC_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mva {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

// log(sum_i exp(x_i)) with max-subtraction; -inf for empty or all-(-inf) input.
double log_sum_exp(std::span<const double> x);

// n points evenly spaced on [lo, hi]; n == 1 gives {lo}; endpoints exact.
// Adjacent duplicates produced by rounding are collapsed.
std::vector<double> linspace(double lo, double hi, std::size_t n);

// n points geometrically spaced on [lo, hi] with 0 < lo <= hi; n == 1 gives {lo}.
std::vector<double> geomspace(double lo, double hi, std::size_t n);

// Decimal text with 17 significant digits; round-trips every finite double.
std::string format_double(double x);

// Mean and sample standard deviation (divisor n-1; sd = 0 when n < 2).
std::pair<double, double> mean_sd(std::span<const double> x);

} // namespace mva

#endif
