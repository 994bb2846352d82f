#pragma once

#include "tswave/params.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace tswave {

// Which code path a configuration feeds; the Mach bound is stricter for mode construction.
enum class ConfigUse { General, ModePath };

struct SweepSpec {
    bool active = false;
    double lo = 0, hi = 0;
    int decades = 0;
    int perDecade = 0;
    RVec values() const;
};

struct RunConfig {
    std::string profile = "exp";
    FlowParams flow;
    SweepSpec sweep;
    RVec Kscan = {4, 6, 8, 12, 16};
    double ymax = 40;
    int n = 2048;
    int order = 4;
    double tolQuad = 1e-12;
    double tolNewton = 1e-12;
    double tolIter = 1e-11;
    int maxIter = 60;
    std::string outDir = ".";
    uint64_t seed = 12345;
    int threads = 1;

    std::vector<std::string> warnings;   // filled by parseConfig, not serialized

    // Canonical text: fixed section and key order, numbers at 17 significant digits.
    std::string canonical() const;
    std::string hash() const;            // 16 hex digits of the FNV-1a hash of canonical()
};

// Sections [flow], [sweep], [grid], [tolerance], [output], [run]; "key = value" lines;
// '#' starts a comment. Unknown sections or keys are errors.
RunConfig parseConfig(const std::string& text, ConfigUse use = ConfigUse::General);
RunConfig loadConfig(const std::string& path, ConfigUse use = ConfigUse::General);
// Re-checks Mach and ranges after command-line overrides.
void validateConfig(RunConfig& cfg, ConfigUse use);

// "eps=1e-10:1e-7 decades=3 per_decade=4", or "1e-10:1e-7" with per_decade 4 and decades inferred.
SweepSpec parseSweep(const std::string& spec);

cplx parseComplex(const std::string& s);
std::string formatDouble(double x);      // %.17g
uint64_t fnv1a(const std::string& bytes);
std::string hex64(uint64_t h);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row);
    std::string csv() const;
    std::string json() const;
};

// Records outputs and timings of one run; only files that were written are listed.
class RunManifest {
public:
    RunManifest(std::string command, const RunConfig& cfg);
    void write(const std::string& path, const std::string& bytes);
    void timing(const std::string& stage, double seconds);
    void warn(const std::string& w);
    bool hasWarnings() const { return !warnings_.empty(); }
    std::string json() const;
    const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

private:
    std::string command_, hash_, canonical_;
    std::vector<std::pair<std::string, std::string>> files_;  // path, digest
    std::vector<std::pair<std::string, double>> timings_;
    std::vector<std::string> warnings_;
};

std::string artifactVersion();

} // namespace tswave
