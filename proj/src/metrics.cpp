#include "qdc/metrics.hpp"

#include <stdexcept>

#include "fmt_compat.hpp"

namespace qdc {

double pst(const Counts& counts, const BitString& expected) {
    if (counts.total_shots == 0) throw std::invalid_argument("pst: empty counts");
    return 100.0 * static_cast<double>(counts.count_of(expected.str())) /
           static_cast<double>(counts.total_shots);
}

double pst(const std::vector<WeightedOutcome>& outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("pst: no outcomes");
    double value = 0.0;
    double weight = 0.0;
    for (const WeightedOutcome& o : outcomes) {
        value += o.weight * pst(o.counts, o.expected);
        weight += o.weight;
    }
    if (weight <= 0.0) throw std::invalid_argument("pst: weights sum to zero");
    return value / weight;
}

double e_max_f(const Counts& counts, const BitString& expected) {
    if (counts.total_shots == 0) throw std::invalid_argument("e_max_f: empty counts");
    const std::string key = expected.str();
    std::uint64_t best_false = 0;
    for (const auto& [outcome, n] : counts.histogram)
        if (outcome != key && n > best_false) best_false = n;
    const double total = static_cast<double>(counts.total_shots);
    return 100.0 * (static_cast<double>(counts.count_of(key)) - static_cast<double>(best_false)) /
           total;
}

double e_max_f(const std::vector<WeightedOutcome>& outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("e_max_f: no outcomes");
    double value = 0.0;
    double weight = 0.0;
    for (const WeightedOutcome& o : outcomes) {
        value += o.weight * e_max_f(o.counts, o.expected);
        weight += o.weight;
    }
    if (weight <= 0.0) throw std::invalid_argument("e_max_f: weights sum to zero");
    return value / weight;
}

std::string metrics_header_line() {
    return qfmt("%-24s %-16s %8s %10s %6s", "name", "mode", "PST[%]", "E-Max(F)", "Job#");
}

std::string metrics_row_line(const MetricsRow& row) {
    return qfmt("%-24s %-16s %8.1f %10.1f %6zu", row.name.c_str(), row.mode.c_str(), row.pst,
                row.e_max_f, row.job_count);
}

}  // namespace qdc
