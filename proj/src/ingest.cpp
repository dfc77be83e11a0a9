#include "lcc/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "lcc/errors.hpp"

namespace lcc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Accepts "yyyy-mm-ddThh:mm:ss" (or a space separator). Returns false on
// anything malformed or not on a 15-minute boundary.
bool parse_timestamp(const std::string& ts, std::string* date, int* slot) {
    int y, mo, d, h, mi, se;
    char sep;
    if (std::sscanf(ts.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &y, &mo, &d, &sep, &h,
                    &mi, &se) != 7)
        return false;
    if (sep != 'T' && sep != ' ') return false;
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return false;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || se != 0) return false;
    if (mi % 15 != 0) return false;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, mo, d);
    *date = buf;
    *slot = h * 4 + mi / 15;
    return true;
}

} // namespace

std::string SkipReport::to_json() const {
    std::ostringstream os;
    os << "{\"complete_days\": " << complete_days
       << ", \"skipped_incomplete\": " << skipped_incomplete
       << ", \"skipped_zero\": " << skipped_zero
       << ", \"skipped_duplicate\": " << skipped_duplicate << "}";
    return os.str();
}

std::vector<MeterReading> parse_readings(std::istream& in,
                                         std::vector<std::string>* diagnostics) {
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("empty input: expected header household_id,timestamp,kwh");
    if (trim(line) != "household_id,timestamp,kwh")
        throw FormatError("unrecognized header: '" + trim(line) +
                          "' (expected household_id,timestamp,kwh)");

    std::vector<MeterReading> out;
    int lineno = 1;
    auto reject = [&](const std::string& why) {
        if (diagnostics)
            diagnostics->push_back("line " + std::to_string(lineno) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string row = trim(line);
        if (row.empty()) continue;

        std::size_t c1 = row.find(',');
        std::size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                                   : row.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            row.find(',', c2 + 1) != std::string::npos) {
            reject("expected 3 fields");
            continue;
        }
        MeterReading r;
        r.household_id = trim(row.substr(0, c1));
        std::string ts = trim(row.substr(c1 + 1, c2 - c1 - 1));
        std::string kwh_s = trim(row.substr(c2 + 1));

        if (r.household_id.empty()) {
            reject("empty household_id");
            continue;
        }
        if (!parse_timestamp(ts, &r.date, &r.slot)) {
            reject("bad timestamp '" + ts + "'");
            continue;
        }
        char* end = nullptr;
        r.kwh = std::strtod(kwh_s.c_str(), &end);
        if (kwh_s.empty() || end != kwh_s.c_str() + kwh_s.size() ||
            !std::isfinite(r.kwh)) {
            reject("bad kwh '" + kwh_s + "'");
            continue;
        }
        if (r.kwh < 0) {
            reject("negative kwh");
            continue;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<LoadCurve> assemble_days(const std::vector<MeterReading>& readings,
                                     SkipReport* report) {
    // (household, date) -> per-slot reading count and values.
    struct Day {
        std::vector<double> samples = std::vector<double>(kSlotsPerDay, 0.0);
        std::vector<int> count = std::vector<int>(kSlotsPerDay, 0);
    };
    std::map<std::pair<std::string, std::string>, Day> days;
    for (const auto& r : readings) {
        Day& d = days[{r.household_id, r.date}];
        d.samples[r.slot] = r.kwh;
        d.count[r.slot]++;
    }

    std::vector<LoadCurve> out;
    for (auto& [key, day] : days) {
        bool duplicate = false, incomplete = false;
        for (int c : day.count) {
            if (c > 1) duplicate = true;
            if (c == 0) incomplete = true;
        }
        if (duplicate) {
            if (report) report->skipped_duplicate++;
            continue;
        }
        if (incomplete) {
            if (report) report->skipped_incomplete++;
            continue;
        }
        LoadCurve lc;
        lc.household_id = key.first;
        lc.date = key.second;
        lc.samples = std::move(day.samples);
        out.push_back(std::move(lc));
    }
    // std::map iteration is already sorted (household, date); ids follow it.
    for (std::size_t i = 0; i < out.size(); ++i) out[i].curve_id = static_cast<int>(i);
    return out;
}

NormalizedCurve normalize(const LoadCurve& curve) {
    double sum = 0;
    for (double s : curve.samples) sum += s;
    if (sum <= 0)
        throw ZeroConsumptionDay("all-zero day " + curve.household_id + "/" +
                                 curve.date);
    NormalizedCurve nc;
    nc.curve_id = curve.curve_id;
    nc.values.reserve(curve.samples.size());
    for (double s : curve.samples) nc.values.push_back(s / sum);
    return nc;
}

std::vector<NormalizedCurve> normalize_all(const std::vector<LoadCurve>& curves,
                                           SkipReport* report) {
    std::vector<NormalizedCurve> out;
    out.reserve(curves.size());
    for (const auto& c : curves) {
        try {
            out.push_back(normalize(c));
        } catch (const ZeroConsumptionDay&) {
            if (report) report->skipped_zero++;
        }
    }
    if (report) report->complete_days = static_cast<int>(out.size());
    return out;
}

} // namespace lcc
