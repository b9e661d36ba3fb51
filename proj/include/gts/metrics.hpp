#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gts {

struct Summary {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample sd / sqrt(n); 0 with stderr_defined=false when n == 1
    std::size_t trials = 0;
    bool stderr_defined = false;

    double lower(double k = 2.0) const noexcept { return mean - k * stderr_; }
    double upper(double k = 2.0) const noexcept { return mean + k * stderr_; }
};

Summary summarize(std::span<const double> values);

// True when [mean - k*se, mean + k*se] of a lies entirely above that of b.
bool separated_above(const Summary& a, const Summary& b, double k = 2.0);

// Maps each value to (its quantile bin)/(bins-1). A value's bin is taken from
// the count of strictly smaller values, so equal values always share a bin.
std::vector<double> quantile_bin(std::span<const double> values, std::size_t bins);

double cases_metric(double binned_reward);

struct ParetoPoint {
    double budget = 0.0;
    double cases = 1.0;
    friend bool operator==(const ParetoPoint&, const ParetoPoint&) = default;
};

bool dominates(const ParetoPoint& p, const ParetoPoint& q);

// Minimize-both non-dominated subset, sorted by budget ascending (cases
// ascending on budget ties; exact duplicates kept once).
std::vector<ParetoPoint> pareto_frontier(std::span<const ParetoPoint> points);

// Best cases achievable with budget <= b on a frontier (step function).
std::optional<double> frontier_cases_at(std::span<const ParetoPoint> frontier, double budget);

}  // namespace gts
