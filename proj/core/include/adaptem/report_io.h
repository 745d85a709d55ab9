#pragma once

#include "adaptem/montecarlo.h"
#include "adaptem/regression.h"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace adaptem {

/// Columns exactly delta,msq,msq_stderr,cost_mean,cost_stderr; numbers as %.17g.
void write_report_csv(std::ostream& out, const MonteCarloReport& report);
void write_report_json(std::ostream& out, const MonteCarloReport& report, std::string_view problem_name);

/// Keys exactly c1, c2, c3, residual_logspace, residual_rawspace.
void write_fit_json(std::ostream& out, const RegressionFit& fit);

struct CsvColumns {
    std::vector<double> deltas;
    std::vector<double> values;
};

/// Reads the delta column and `column` from a report CSV. Throws InvalidInput
/// if either column is missing or a cell does not parse.
[[nodiscard]] CsvColumns read_csv_columns(std::istream& in, std::string_view column);

/// Generic "name,mean,stderr" table used by the occupation and transform commands.
void write_estimates_csv(std::ostream& out, std::string_view key_name, std::string_view value_name,
                         const std::vector<DeltaEstimate>& rows);

/// Parses "2^-2..2^-8" (dyadic range, inclusive), "2^-3,2^-5" or "0.25,0.125".
[[nodiscard]] std::vector<double> parse_deltas(std::string_view text);

/// printf("%.17g") of a double.
[[nodiscard]] std::string format_double(double v);

} // namespace adaptem
