#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace netrel {

namespace kendall_detail {

// Counts strict inversions (i < j with v[i] > v[j]) while merge-sorting v.
inline std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf,
                                std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inversions = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
    std::size_t left = lo, right = mid, out = lo;
    while (left < mid && right < hi) {
        if (v[right] < v[left]) {
            inversions += static_cast<std::int64_t>(mid - left);
            buf[out++] = v[right++];
        } else {
            buf[out++] = v[left++];
        }
    }
    while (left < mid) buf[out++] = v[left++];
    while (right < hi) buf[out++] = v[right++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
              buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inversions;
}

inline std::int64_t pairs(std::int64_t t) { return t * (t - 1) / 2; }

}  // namespace kendall_detail

/// Kendall tau-b via Knight's O(n log n) inversion-counting algorithm:
///   tau_b = (n0 - n1 - n2 + n3 - 2S) / sqrt((n0 - n1) (n0 - n2))
/// with n0 = n(n-1)/2, n1/n2 tied pairs within x/y, n3 pairs tied in both,
/// and S the y-inversions after sorting by (x, y). Ties are exact value
/// equality; no epsilon bucketing.
inline double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("kendall_tau_b: length mismatch");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("kendall_tau_b: need at least two observations");
    }

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    std::int64_t n1 = 0;  // tied pairs in x
    std::int64_t n3 = 0;  // tied pairs in both
    {
        std::size_t run = 0;
        std::size_t joint_run = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool same_x = i > 0 && x[order[i]] == x[order[i - 1]];
            const bool same_xy = same_x && y[order[i]] == y[order[i - 1]];
            run = same_x ? run + 1 : 1;
            joint_run = same_xy ? joint_run + 1 : 1;
            n1 += static_cast<std::int64_t>(run) - 1;
            n3 += static_cast<std::int64_t>(joint_run) - 1;
        }
    }

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
    std::vector<double> buf(n);
    const std::int64_t swaps = kendall_detail::merge_count(ys, buf, 0, n);

    std::int64_t n2 = 0;  // tied pairs in y (ys is now sorted)
    {
        std::size_t run = 0;
        for (std::size_t i = 0; i < n; ++i) {
            run = (i > 0 && ys[i] == ys[i - 1]) ? run + 1 : 1;
            n2 += static_cast<std::int64_t>(run) - 1;
        }
    }

    const std::int64_t n0 = kendall_detail::pairs(static_cast<std::int64_t>(n));
    if (n0 == n1 || n0 == n2) {
        throw std::domain_error("kendall_tau_b: undefined when one side is entirely tied");
    }
    const std::int64_t numerator = n0 - n1 - n2 + n3 - 2 * swaps;
    const double denominator = std::sqrt(static_cast<double>(n0 - n1)) *
                               std::sqrt(static_cast<double>(n0 - n2));
    return static_cast<double>(numerator) / denominator;
}

}  // namespace netrel
