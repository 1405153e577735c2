#pragma once

#include <functional>

namespace bd3 {

// Bracketing line search on a rotation angle: start at 0.1 rad, expand while
// improving, shrink by 0.5 otherwise, at most 40 objective evaluations.
// Returns the best (t, f(t)) found, never worse than (0, f0).
struct LineSearchResult {
    double t = 0.0;
    double value;
};

inline LineSearchResult line_search_max(double f0, const std::function<double(double)>& eval) {
    LineSearchResult best{0.0, f0};
    double t = 0.1;
    bool expanding = false;
    for (int n = 0; n < 40; ++n) {
        const double ft = eval(t);
        if (ft > best.value) {
            best = {t, ft};
            expanding = true;
            t *= 2.0;
        } else {
            if (expanding) break; // bracketed: the previous point was the peak
            t *= 0.5;
            if (t < 1e-12) break;
        }
    }
    return best;
}

} // namespace bd3
