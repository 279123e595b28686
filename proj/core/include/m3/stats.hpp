#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace m3 {

// One-sided Wilcoxon rank-sum (Mann-Whitney) p-value for the alternative
// "a stochastically greater than b", normal approximation with tie
// correction. Adequate for the sample sizes the harness compares.
inline double rank_sum_p_greater(const std::vector<double>& a, const std::vector<double>& b) {
    size_t n1 = a.size(), n2 = b.size();
    if (n1 == 0 || n2 == 0) return 1.0;

    struct Entry {
        double value;
        bool from_a;
    };
    std::vector<Entry> all;
    all.reserve(n1 + n2);
    for (double v : a) all.push_back({v, true});
    for (double v : b) all.push_back({v, false});
    std::sort(all.begin(), all.end(), [](const Entry& l, const Entry& r) { return l.value < r.value; });

    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    size_t i = 0;
    size_t n = all.size();
    while (i < n) {
        size_t j = i;
        while (j < n && all[j].value == all[i].value) ++j;
        double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        for (size_t k = i; k < j; ++k)
            if (all[k].from_a) rank_sum_a += avg_rank;
        i = j;
    }

    double u = rank_sum_a - static_cast<double>(n1) * (n1 + 1) / 2.0;
    double mu = static_cast<double>(n1) * n2 / 2.0;
    double nn = static_cast<double>(n);
    double sigma2 = (static_cast<double>(n1) * n2 / 12.0) * (nn + 1.0 - tie_term / (nn * (nn - 1.0)));
    if (sigma2 <= 0.0) return u > mu ? 0.0 : 1.0;
    double z = (u - mu - 0.5) / std::sqrt(sigma2);  // continuity correction
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace m3
