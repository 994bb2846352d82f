#include "tswave/cli_io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <algorithm>
#include <sstream>

namespace tswave {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double toDouble(const std::string& key, const std::string& v) {
    try {
        size_t pos;
        double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty() && std::isfinite(x)) return x;
    } catch (const std::exception&) {
    }
    throw DomainError("key '" + key + "': expected a number, got '" + v + "'");
}

long long toInt(const std::string& key, const std::string& v) {
    double x = toDouble(key, v);
    if (x != std::floor(x)) throw DomainError("key '" + key + "': expected an integer, got '" + v + "'");
    return static_cast<long long>(x);
}

RVec toList(const std::string& key, const std::string& v) {
    RVec out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(toDouble(key, trim(item)));
    if (out.empty()) throw DomainError("key '" + key + "': empty list");
    return out;
}

std::string joinList(const RVec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + formatDouble(v[i]);
    return s;
}

} // namespace

std::string formatDouble(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string artifactVersion() { return "tswave 1.0.0"; }

cplx parseComplex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    static const std::string num = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
    static const std::regex both("^" + num + R"(([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]$)");
    static const std::regex realOnly("^" + num + "$");
    static const std::regex imagOnly("^" + num + "?[ij]$");
    static const std::regex signedUnit(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-])[ij]$)");
    std::smatch m;
    if (s == "i" || s == "+i" || s == "j" || s == "+j") return {0.0, 1.0};
    if (s == "-i" || s == "-j") return {0.0, -1.0};
    if (std::regex_match(s, m, realOnly)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(s, m, signedUnit)) return {std::stod(m[1]), m[2] == "-" ? -1.0 : 1.0};
    if (std::regex_match(s, m, both) && m[2].matched) return {std::stod(m[1]), std::stod(m[2])};
    if (std::regex_match(s, m, imagOnly)) {
        std::string im = m[1].matched ? m[1].str() : "1";
        if (im == "+" || im == "-") im += "1";
        return {0.0, std::stod(im)};
    }
    throw DomainError("cannot parse complex number '" + text + "'");
}

RVec SweepSpec::values() const {
    if (!active) return {};
    RVec v(static_cast<size_t>(decades) * perDecade + 1);
    const double step = std::log10(hi / lo) / (decades * perDecade);
    for (size_t k = 0; k < v.size(); ++k) v[k] = lo * std::pow(10.0, step * k);
    v.back() = hi;
    return v;
}

SweepSpec parseSweep(const std::string& spec) {
    SweepSpec s;
    s.active = true;
    s.perDecade = 4;
    std::stringstream ss(spec);
    std::string tok, range;
    bool haveDecades = false;
    while (ss >> tok) {
        auto eq = tok.find('=');
        std::string k = eq == std::string::npos ? "" : tok.substr(0, eq);
        std::string v = eq == std::string::npos ? tok : tok.substr(eq + 1);
        if (k.empty() || k == "eps") range = v;
        else if (k == "decades") s.decades = static_cast<int>(toInt(k, v)), haveDecades = true;
        else if (k == "per_decade") s.perDecade = static_cast<int>(toInt(k, v));
        else throw DomainError("unknown sweep key '" + k + "'");
    }
    auto colon = range.find(':');
    if (colon == std::string::npos) throw DomainError("sweep range must read lo:hi");
    s.lo = toDouble("sweep", range.substr(0, colon));
    s.hi = toDouble("sweep", range.substr(colon + 1));
    if (!(s.lo > 0) || !(s.hi > s.lo)) throw DomainError("sweep range needs 0 < lo < hi");
    if (s.perDecade < 1) throw DomainError("per_decade must be at least 1");
    const double dec = std::log10(s.hi / s.lo);
    if (!haveDecades) s.decades = static_cast<int>(std::lround(dec));
    if (s.decades < 1 || std::abs(dec - s.decades) > 1e-9 * std::max(1.0, dec))
        throw DomainError("sweep decades do not match the range lo:hi");
    return s;
}

void validateConfig(RunConfig& cfg, ConfigUse use) {
    const double M = cfg.flow.M;
    if (!(M >= 0) || M >= 1) throw DomainError("mach must satisfy 0 <= M < 1");
    if (M >= 1.0 / std::sqrt(3.0)) {
        const std::string msg = "mach " + formatDouble(M) + " violates the hypothesis M < 1/sqrt(3)";
        if (use == ConfigUse::ModePath) throw DomainError(msg);
        cfg.warnings.push_back(msg);
    }
    cfg.flow.check();
    if (!(cfg.ymax > 0)) throw DomainError("ymax must be positive");
    if (cfg.n < 256) throw DomainError("n must be at least 256");
    if (cfg.order < 2 || cfg.order > 8 || cfg.order % 2) throw DomainError("order must be even in [2, 8]");
    for (double t : {cfg.tolQuad, cfg.tolNewton, cfg.tolIter})
        if (!(t > 0)) throw DomainError("tolerances must be positive");
    if (cfg.maxIter < 1) throw DomainError("max_iter must be at least 1");
    if (cfg.threads < 1) throw DomainError("threads must be at least 1");
    for (double K : cfg.Kscan)
        if (!(K > 0)) throw DomainError("K scan values must be positive");
}

RunConfig parseConfig(const std::string& text, ConfigUse use) {
    RunConfig cfg;
    std::stringstream in(text);
    std::string line, section;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw DomainError("line " + std::to_string(lineNo) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"flow", "sweep", "grid", "tolerance", "output", "run"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known))
                throw DomainError("unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("line " + std::to_string(lineNo) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;
        if (full == "flow.profile") cfg.profile = v;
        else if (full == "flow.mach") cfg.flow.M = toDouble(full, v);
        else if (full == "flow.eps") cfg.flow.eps = toDouble(full, v);
        else if (full == "flow.K") cfg.flow.K = toDouble(full, v);
        else if (full == "flow.theta") cfg.flow.theta = toDouble(full, v);
        else if (full == "flow.lambda") cfg.flow.lambda = toDouble(full, v);
        else if (full == "flow.regime") {
            if (v == "theorem") cfg.flow.regime = Regime::Theorem;
            else if (v == "experimental") cfg.flow.regime = Regime::Experimental;
            else throw DomainError("flow.regime must be theorem or experimental");
        } else if (full == "flow.exp_beta") cfg.flow.expBeta = toDouble(full, v);
        else if (full == "flow.exp_c") cfg.flow.expC = toDouble(full, v);
        else if (full == "sweep.eps") cfg.sweep = parseSweep(v);
        else if (full == "sweep.K_scan") cfg.Kscan = toList(full, v);
        else if (full == "grid.ymax") cfg.ymax = toDouble(full, v);
        else if (full == "grid.n") cfg.n = static_cast<int>(toInt(full, v));
        else if (full == "grid.order") cfg.order = static_cast<int>(toInt(full, v));
        else if (full == "tolerance.quadrature") cfg.tolQuad = toDouble(full, v);
        else if (full == "tolerance.newton") cfg.tolNewton = toDouble(full, v);
        else if (full == "tolerance.iteration") cfg.tolIter = toDouble(full, v);
        else if (full == "tolerance.max_iter") cfg.maxIter = static_cast<int>(toInt(full, v));
        else if (full == "output.dir") cfg.outDir = v;
        else if (full == "run.seed") cfg.seed = static_cast<uint64_t>(toInt(full, v));
        else if (full == "run.threads") cfg.threads = static_cast<int>(toInt(full, v));
        else throw DomainError("unknown key '" + full + "'");
    }
    validateConfig(cfg, use);
    return cfg;
}

RunConfig loadConfig(const std::string& path, ConfigUse use) {
    std::ifstream f(path);
    if (!f) throw IOError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parseConfig(ss.str(), use);
}

std::string RunConfig::canonical() const {
    std::ostringstream o;
    o << "[flow]\n"
      << "profile = " << profile << "\n"
      << "mach = " << formatDouble(flow.M) << "\n"
      << "eps = " << formatDouble(flow.eps) << "\n"
      << "K = " << formatDouble(flow.K) << "\n"
      << "theta = " << formatDouble(flow.theta) << "\n"
      << "lambda = " << formatDouble(flow.lambda) << "\n"
      << "regime = " << (flow.regime == Regime::Theorem ? "theorem" : "experimental") << "\n"
      << "exp_beta = " << formatDouble(flow.expBeta) << "\n"
      << "exp_c = " << formatDouble(flow.expC) << "\n"
      << "[sweep]\n";
    if (sweep.active)
        o << "eps = eps=" << formatDouble(sweep.lo) << ":" << formatDouble(sweep.hi) << " decades=" << sweep.decades
          << " per_decade=" << sweep.perDecade << "\n";
    o << "K_scan = " << joinList(Kscan) << "\n"
      << "[grid]\n"
      << "ymax = " << formatDouble(ymax) << "\n"
      << "n = " << n << "\n"
      << "order = " << order << "\n"
      << "[tolerance]\n"
      << "quadrature = " << formatDouble(tolQuad) << "\n"
      << "newton = " << formatDouble(tolNewton) << "\n"
      << "iteration = " << formatDouble(tolIter) << "\n"
      << "max_iter = " << maxIter << "\n"
      << "[output]\n"
      << "dir = " << outDir << "\n"
      << "[run]\n"
      << "seed = " << seed << "\n"
      << "threads = " << threads << "\n";
    return o.str();
}

std::string RunConfig::hash() const { return hex64(fnv1a(canonical())); }

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw DomainError("table row width does not match the header");
    rows.push_back(std::move(row));
}

namespace {

std::string cellText(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return formatDouble(*d);
    if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

} // namespace

std::string Table::csv() const {
    std::string out;
    for (size_t j = 0; j < columns.size(); ++j) out += (j ? "," : "") + columns[j];
    out += "\n";
    for (const auto& r : rows) {
        for (size_t j = 0; j < r.size(); ++j) out += (j ? "," : "") + cellText(r[j]);
        out += "\n";
    }
    return out;
}

std::string Table::json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        for (size_t j = 0; j < r.size(); ++j) std::visit([&](auto&& v) { o[columns[j]] = v; }, r[j]);
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

RunManifest::RunManifest(std::string command, const RunConfig& cfg)
    : command_(std::move(command)), hash_(cfg.hash()), canonical_(cfg.canonical()) {
    for (const auto& w : cfg.warnings) warnings_.push_back(w);
}

void RunManifest::write(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IOError("cannot open '" + path + "' for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.close();
    if (!f) throw IOError("write to '" + path + "' failed");
    files_.emplace_back(path, hex64(fnv1a(bytes)));
}

void RunManifest::timing(const std::string& stage, double seconds) { timings_.emplace_back(stage, seconds); }
void RunManifest::warn(const std::string& w) { warnings_.push_back(w); }

std::string RunManifest::json() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["version"] = artifactVersion();
    j["config_hash"] = hash_;
    j["config"] = canonical_;
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [k, v] : timings_) t[k] = v;
    j["timings"] = t;
    j["warnings"] = warnings_;
    nlohmann::ordered_json f = nlohmann::ordered_json::array();
    for (const auto& [p, d] : files_) f.push_back({{"path", p}, {"digest_fnv1a64", d}});
    j["files"] = f;
    return j.dump(2) + "\n";
}

} // namespace tswave
