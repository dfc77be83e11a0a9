#ifndef LCC_SYNTH_HPP
#define LCC_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lcc/types.hpp"

namespace lcc {

// Named 96-point consumption shapes used by the generator.
std::vector<std::string> synth_template_names();
std::vector<double> synth_template(const std::string& name);

struct SynthSpec {
    std::vector<std::string> templates = synth_template_names();
    int curves_per_template = 100;
    double noise_sigma = 0.1;    // fraction of template peak
    int days_per_household = 10; // curves per synthetic household
    std::uint64_t seed = 42;
};

struct SynthCorpus {
    std::vector<LoadCurve> curves;
    std::vector<int> labels; // ground-truth template index per curve
};

// Deterministic for a fixed seed: each curve is its template plus i.i.d.
// Gaussian noise, clipped at zero. Households group consecutive days of
// one template.
SynthCorpus generate(const SynthSpec& spec);

// Chance-corrected agreement between two labelings over the same index
// set, in [-1, 1].
double adjusted_rand(const std::vector<int>& a, const std::vector<int>& b);

} // namespace lcc

#endif
