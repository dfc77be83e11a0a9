#ifndef LCC_TYPES_HPP
#define LCC_TYPES_HPP

#include <string>
#include <vector>

namespace lcc {

// 15-minute sampling over one day.
inline constexpr int kSlotsPerDay = 96;

// One raw smart-meter row. `slot` is the 15-minute index within `date`,
// in [0, 96).
struct MeterReading {
    std::string household_id;
    std::string date; // ISO yyyy-mm-dd
    int slot = 0;
    double kwh = 0.0;
};

// One household-day of raw consumption.
struct LoadCurve {
    int curve_id = -1;
    std::string household_id;
    std::string date;
    std::vector<double> samples; // kSlotsPerDay entries, kWh
};

// Unit-sum normalized curve. Length is usually kSlotsPerDay but the
// distance layer accepts any equal-length pair.
struct NormalizedCurve {
    int curve_id = -1;
    std::vector<double> values;
};

// Assignment of every curve/vertex to a community, labels dense 0..k-1.
struct Partition {
    std::vector<int> labels;

    int num_clusters() const;
    // Remaps labels to dense 0..k-1 by first occurrence in index order.
    void compact();
};

} // namespace lcc

#endif
