#ifndef LCC_INGEST_HPP
#define LCC_INGEST_HPP

#include <istream>
#include <string>
#include <vector>

#include "lcc/types.hpp"

namespace lcc {

struct SkipReport {
    int complete_days = 0;
    int skipped_incomplete = 0;
    int skipped_zero = 0;
    int skipped_duplicate = 0;

    std::string to_json() const;
};

// Parses `household_id,timestamp,kwh` CSV. Malformed rows are dropped and
// reported in `diagnostics` with their line number; a bad header throws
// FormatError.
std::vector<MeterReading> parse_readings(std::istream& in,
                                         std::vector<std::string>* diagnostics = nullptr);

// Groups readings into complete household-days. Days with missing or
// duplicate slots are excluded and counted in `report`. Curve ids are
// assigned in sorted (household_id, date) order.
std::vector<LoadCurve> assemble_days(const std::vector<MeterReading>& readings,
                                     SkipReport* report = nullptr);

// Unit-sum normalization. Throws ZeroConsumptionDay when the day sums to 0.
NormalizedCurve normalize(const LoadCurve& curve);

// Normalizes a batch, dropping all-zero days and counting them in `report`.
// Also sets report->complete_days to the number of curves kept.
std::vector<NormalizedCurve> normalize_all(const std::vector<LoadCurve>& curves,
                                           SkipReport* report = nullptr);

} // namespace lcc

#endif
