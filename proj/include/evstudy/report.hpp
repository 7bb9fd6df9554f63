#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evstudy/study.hpp"

namespace evstudy {

/// Cross-sectional moments of the additive cumulative value for one window.
struct AggregateStat {
    OffsetRange window;
    std::size_t k = 0;  // events contributing
    std::optional<double> mean;
    std::optional<double> std_dev;  // needs k >= 2
    std::optional<double> z;        // needs std_dev > 0
};

std::vector<AggregateStat> aggregate_stats(const StudyReport& report);

void write_report_text(const StudyReport& report, std::ostream& out);
void write_report_json(const StudyReport& report, std::ostream& out);
void write_crosstab_csv(const CrossTable& table, std::ostream& out);
void write_histogram_csv(const Histogram& histogram, std::ostream& out);

// Writes report.txt, report.json, one crosstab CSV per requested method pair
// and, when captured, per-event histogram CSVs into out_dir. Returns the
// file names written, in creation order.
std::vector<std::string> write_study_outputs(const StudyReport& report,
                                             const std::string& out_dir);

}  // namespace evstudy
