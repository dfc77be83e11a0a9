#include "lcc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "lcc/errors.hpp"

namespace lcc {

namespace {

// Gaussian bump over the 96-slot grid.
void add_bump(std::vector<double>& v, double center, double width, double amp) {
    for (int t = 0; t < kSlotsPerDay; ++t) {
        double z = (t - center) / width;
        v[t] += amp * std::exp(-0.5 * z * z);
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// yyyy-mm-dd plus a day offset; enough calendar for generated corpora.
std::string date_offset(int year, int month, int day, int offset) {
    static const int mlen[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    day += offset;
    while (true) {
        int len = mlen[month - 1];
        if (month == 2 && ((year % 4 == 0 && year % 100 != 0) || year % 400 == 0))
            len = 29;
        if (day <= len) break;
        day -= len;
        if (++month > 12) {
            month = 1;
            ++year;
        }
    }
    std::ostringstream os;
    os << std::setfill('0') << std::setw(4) << year << '-' << std::setw(2)
       << month << '-' << std::setw(2) << day;
    return os.str();
}

} // namespace

std::vector<std::string> synth_template_names() {
    return {"morning-peak", "evening-peak", "double-peak", "flat", "night-shift"};
}

std::vector<double> synth_template(const std::string& name) {
    std::vector<double> v(kSlotsPerDay, 0.0);
    if (name == "morning-peak") {
        std::fill(v.begin(), v.end(), 0.15);
        add_bump(v, 30, 6, 1.0); // ~07:30
    } else if (name == "evening-peak") {
        std::fill(v.begin(), v.end(), 0.15);
        add_bump(v, 76, 6, 1.0); // ~19:00
    } else if (name == "double-peak") {
        std::fill(v.begin(), v.end(), 0.1);
        add_bump(v, 30, 5, 0.7);
        add_bump(v, 76, 5, 0.7);
    } else if (name == "flat") {
        std::fill(v.begin(), v.end(), 0.5);
    } else if (name == "night-shift") {
        std::fill(v.begin(), v.end(), 0.15);
        add_bump(v, 8, 7, 1.0); // ~02:00
    } else {
        throw Error("unknown template '" + name + "'");
    }
    return v;
}

SynthCorpus generate(const SynthSpec& spec) {
    if (spec.curves_per_template < 1)
        throw Error("generate: curves_per_template must be >= 1");
    if (spec.noise_sigma < 0) throw Error("generate: negative noise_sigma");
    if (spec.days_per_household < 1)
        throw Error("generate: days_per_household must be >= 1");

    SynthCorpus corpus;
    int curve_id = 0;
    for (std::size_t ti = 0; ti < spec.templates.size(); ++ti) {
        std::vector<double> shape = synth_template(spec.templates[ti]);
        double peak = *std::max_element(shape.begin(), shape.end());
        double sigma = spec.noise_sigma * peak;

        for (int c = 0; c < spec.curves_per_template; ++c) {
            LoadCurve lc;
            lc.curve_id = curve_id;
            int household = c / spec.days_per_household;
            int day = c % spec.days_per_household;
            char hh[48];
            std::snprintf(hh, sizeof hh, "t%zu_h%03d", ti, household);
            lc.household_id = hh;
            lc.date = date_offset(2015, 7, 6, day);

            // Per-curve derived sub-seed keeps generation order-free.
            std::mt19937_64 rng(splitmix64(spec.seed ^ (0x1000003ull * curve_id)));
            std::normal_distribution<double> noise(0.0, sigma);
            lc.samples.resize(kSlotsPerDay);
            for (int t = 0; t < kSlotsPerDay; ++t) {
                double s = shape[t] + (sigma > 0 ? noise(rng) : 0.0);
                lc.samples[t] = std::max(0.0, s);
            }
            corpus.curves.push_back(std::move(lc));
            corpus.labels.push_back(static_cast<int>(ti));
            ++curve_id;
        }
    }
    return corpus;
}

double adjusted_rand(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw Error("adjusted_rand: label vectors differ in length");
    const std::size_t n = a.size();
    if (n == 0) return 1.0;

    std::map<std::pair<int, int>, long long> cont;
    std::map<int, long long> row, col;
    for (std::size_t i = 0; i < n; ++i) {
        cont[{a[i], b[i]}]++;
        row[a[i]]++;
        col[b[i]]++;
    }
    auto choose2 = [](long long x) { return x * (x - 1) / 2.0; };
    double sum_ij = 0, sum_a = 0, sum_b = 0;
    for (auto& [k, v] : cont) sum_ij += choose2(v);
    for (auto& [k, v] : row) sum_a += choose2(v);
    for (auto& [k, v] : col) sum_b += choose2(v);
    double total = choose2(static_cast<long long>(n));
    double expected = sum_a * sum_b / total;
    double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0; // both trivial partitions
    return (sum_ij - expected) / (max_index - expected);
}

} // namespace lcc
