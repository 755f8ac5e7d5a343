#pragma once

// Reference implementations by direct enumeration, deliberately independent
// of the library's recurrence-based code paths. Exponential cost; test-sized
// inputs only.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

/// sigma_r by explicit sum over all r-element subsets.
inline double subset_sum_sigma(const std::vector<double>& kappa, int r) {
    const int n = static_cast<int>(kappa.size());
    if (r == 0) return 1.0;
    if (r < 0 || r > n) return 0.0;
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) prod *= kappa[static_cast<size_t>(i)];
        total += prod;
    }
    return total;
}

/// sigma_r of kappa with entry i removed, again by subset enumeration.
inline double remove_one_sigma(const std::vector<double>& kappa, int i, int r) {
    std::vector<double> rest;
    rest.reserve(kappa.size() - 1);
    for (int j = 0; j < static_cast<int>(kappa.size()); ++j)
        if (j != i) rest.push_back(kappa[static_cast<size_t>(j)]);
    return subset_sum_sigma(rest, r);
}

/// sum_i kappa_i^p * sigma_r(kappa without i), the direct trace sums.
inline double trace_sum(const std::vector<double>& kappa, int r, int p) {
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(kappa.size()); ++i)
        total += std::pow(kappa[static_cast<size_t>(i)], p) * remove_one_sigma(kappa, i, r);
    return total;
}

} // namespace oracle
