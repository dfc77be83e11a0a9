#ifndef LCC_ERRORS_HPP
#define LCC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lcc {

// Base class for all data-level failures raised by the pipeline.
// The CLI maps these to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct ZeroConsumptionDay : Error {
    explicit ZeroConsumptionDay(const std::string& msg) : Error(msg) {}
};

struct TooFewCurves : Error {
    explicit TooFewCurves(const std::string& msg) : Error(msg) {}
};

struct EmptyGraph : Error {
    explicit EmptyGraph(const std::string& msg) : Error(msg) {}
};

struct EmptyCluster : Error {
    explicit EmptyCluster(const std::string& msg) : Error(msg) {}
};

struct InvalidK : Error {
    explicit InvalidK(const std::string& msg) : Error(msg) {}
};

struct CoincidentCenters : Error {
    explicit CoincidentCenters(const std::string& msg) : Error(msg) {}
};

struct DegenerateDensity : Error {
    explicit DegenerateDensity(const std::string& msg) : Error(msg) {}
};

struct UndefinedForSingleCluster : Error {
    explicit UndefinedForSingleCluster(const std::string& msg) : Error(msg) {}
};

struct EmptyDirectory : Error {
    explicit EmptyDirectory(const std::string& msg) : Error(msg) {}
};

struct StaleArtifact : Error {
    explicit StaleArtifact(const std::string& msg) : Error(msg) {}
};

struct MissingArtifact : Error {
    explicit MissingArtifact(const std::string& msg) : Error(msg) {}
};

} // namespace lcc

#endif
