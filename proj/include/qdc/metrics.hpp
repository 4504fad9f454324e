/** \file
 * Output-reliability metrics: PST (fraction of shots on the expected output)
 * and E-Max(F) (expected-output probability minus the strongest false one),
 * both in percentage points.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qdc/bitstring.hpp"
#include "qdc/noise.hpp"

namespace qdc {

double pst(const Counts& counts, const BitString& expected);

/// Superposition form: per-outcome PSTs within each outcome's own sub-run,
/// averaged with the given weights (assigned shot fractions).
struct WeightedOutcome {
    Counts counts;
    BitString expected;
    double weight{0.0};
};

double pst(const std::vector<WeightedOutcome>& outcomes);

/// 100 * (P(expected) - max over s != expected of P(s)); negative when a
/// false outcome dominates.
double e_max_f(const Counts& counts, const BitString& expected);

double e_max_f(const std::vector<WeightedOutcome>& outcomes);

struct MetricsRow {
    std::string name;
    double pst{0.0};
    double e_max_f{0.0};
    std::size_t job_count{0};
    std::string mode;
};

/// Fixed-width line with one-decimal percentages.
std::string metrics_row_line(const MetricsRow& row);
std::string metrics_header_line();

}  // namespace qdc
