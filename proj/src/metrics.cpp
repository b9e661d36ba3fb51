#include "gts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gts/errors.hpp"

namespace gts {

Summary summarize(std::span<const double> values) {
    require(!values.empty(), "cannot summarize an empty sample");
    Summary s;
    s.trials = values.size();
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() < 2) return s;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    s.stderr_ = sd / std::sqrt(static_cast<double>(values.size()));
    s.stderr_defined = true;
    return s;
}

bool separated_above(const Summary& a, const Summary& b, double k) {
    return a.lower(k) > b.upper(k);
}

std::vector<double> quantile_bin(std::span<const double> values, std::size_t bins) {
    require(!values.empty(), "quantile_bin needs values");
    require(bins >= 2, "quantile_bin needs at least two bins");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(values.size());
    const double top = static_cast<double>(bins - 1);

    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        const auto below = static_cast<double>(
            std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
        const auto bin = std::min(top, std::floor(static_cast<double>(bins) * below / n));
        out.push_back(bin / top);
    }
    return out;
}

double cases_metric(double binned_reward) {
    require(binned_reward >= 0.0 && binned_reward <= 1.0, "binned reward must lie in [0,1]");
    return std::exp(-binned_reward);
}

bool dominates(const ParetoPoint& p, const ParetoPoint& q) {
    return p.budget <= q.budget && p.cases <= q.cases && (p.budget < q.budget || p.cases < q.cases);
}

std::vector<ParetoPoint> pareto_frontier(std::span<const ParetoPoint> points) {
    require(!points.empty(), "pareto_frontier needs points");
    std::vector<ParetoPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        return a.budget < b.budget || (a.budget == b.budget && a.cases < b.cases);
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    // Sweep by budget; a point survives iff its cases beat everything cheaper.
    std::vector<ParetoPoint> front;
    double best_cases = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].budget == sorted[i].budget) ++j;
        // Within a budget group only the lowest-cases point can survive.
        if (sorted[i].cases < best_cases) {
            front.push_back(sorted[i]);
            best_cases = sorted[i].cases;
        }
        i = j;
    }
    return front;
}

std::optional<double> frontier_cases_at(std::span<const ParetoPoint> frontier, double budget) {
    std::optional<double> best;
    for (const auto& p : frontier)
        if (p.budget <= budget + 1e-12 && (!best || p.cases < *best)) best = p.cases;
    return best;
}

}  // namespace gts
