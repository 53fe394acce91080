#pragma once

// CSV emission and parsing for trial records and median tables. Doubles are
// written in shortest round-trip form, so parse(emit(x)) == x.

#include <iosfwd>
#include <string>
#include <vector>

#include "dbpca/experiments.h"

namespace dbpca {

inline constexpr const char* kRawCsvHeader =
    "cell_n,cell_gamma,trial,estimator,te_annual,vol_annual,fr_minvar,"
    "fr_equal,rho,psi_hat,delta2_hat,fallback";
inline constexpr const char* kMedianCsvHeader =
    "cell_n,cell_gamma,estimator,trials,te_annual,vol_annual,fr_minvar,fr_equal";

std::string format_double(double value);
double parse_double(const std::string& text);

void write_raw_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_raw_csv(std::istream& in);

void write_median_csv(std::ostream& out, const std::vector<MedianRow>& rows);
std::vector<MedianRow> read_median_csv(std::istream& in);

}  // namespace dbpca
