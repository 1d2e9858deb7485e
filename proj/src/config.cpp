#include "mildflow/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mildflow/errors.hpp"

namespace mildflow {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& s) {
    if (s == "inf" || s == "+inf") return INFINITY;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || std::isnan(v)) {
        throw ValidationError("not a number: '" + s + "'");
    }
    return v;
}

long long to_integer(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || errno == ERANGE) throw ValidationError("not an integer: '" + s + "'");
    return v;
}

int to_int(const std::string& s) {
    const long long v = to_integer(s);
    if (v < -1000000000LL || v > 1000000000LL) throw ValidationError("integer out of range: '" + s + "'");
    return static_cast<int>(v);
}

std::vector<double> to_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split(s)) out.push_back(to_double(item));
    if (out.empty()) throw ValidationError("empty list");
    return out;
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"experiment", [](ExperimentConfig& c, const std::string& v) { c.experiment = v; }},
        {"dim", [](ExperimentConfig& c, const std::string& v) { c.dim = to_int(v); }},
        {"n", [](ExperimentConfig& c, const std::string& v) { c.n = to_int(v); }},
        {"L", [](ExperimentConfig& c, const std::string& v) { c.L = to_double(v); }},
        {"q", [](ExperimentConfig& c, const std::string& v) { c.q = to_list(v); }},
        {"r", [](ExperimentConfig& c, const std::string& v) { c.r = to_list(v); }},
        {"s", [](ExperimentConfig& c, const std::string& v) { c.s = to_list(v); }},
        {"q_tilde", [](ExperimentConfig& c, const std::string& v) { c.q_tilde = to_list(v); }},
        {"p", [](ExperimentConfig& c, const std::string& v) { c.p = to_list(v); }},
        {"T", [](ExperimentConfig& c, const std::string& v) { c.T = to_list(v); }},
        {"M", [](ExperimentConfig& c, const std::string& v) { c.M = to_int(v); }},
        {"gamma", [](ExperimentConfig& c, const std::string& v) { c.gamma = to_double(v); }},
        {"family", [](ExperimentConfig& c, const std::string& v) { c.family = v; }},
        {"seed",
         [](ExperimentConfig& c, const std::string& v) {
             std::uint64_t x = 0;
             const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
             if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
                 throw ValidationError("seed must be an unsigned 64-bit integer: '" + v + "'");
             }
             c.seed = x;
         }},
        {"count", [](ExperimentConfig& c, const std::string& v) { c.count = to_int(v); }},
        {"band_min", [](ExperimentConfig& c, const std::string& v) { c.band_min = to_int(v); }},
        {"band_max", [](ExperimentConfig& c, const std::string& v) { c.band_max = to_int(v); }},
        {"mode",
         [](ExperimentConfig& c, const std::string& v) {
             const auto parts = split(v);
             if (parts.empty() || parts.size() > 3) throw ValidationError("mode needs 1 to 3 integers");
             c.mode = {0, 0, 0};
             for (std::size_t i = 0; i < parts.size(); ++i) c.mode[i] = to_int(parts[i]);
         }},
        {"width", [](ExperimentConfig& c, const std::string& v) { c.width = to_double(v); }},
        {"exponent", [](ExperimentConfig& c, const std::string& v) { c.exponent = to_double(v); }},
        {"amplitude", [](ExperimentConfig& c, const std::string& v) { c.amplitude = to_list(v); }},
        {"levels", [](ExperimentConfig& c, const std::string& v) { c.levels = to_int(v); }},
        {"delta", [](ExperimentConfig& c, const std::string& v) { c.delta = to_double(v); }},
        {"tol", [](ExperimentConfig& c, const std::string& v) { c.tol = to_double(v); }},
        {"max_iter", [](ExperimentConfig& c, const std::string& v) { c.max_iter = to_int(v); }},
        {"steps", [](ExperimentConfig& c, const std::string& v) { c.steps = to_int(v); }},
        {"dump", [](ExperimentConfig& c, const std::string& v) { c.dump = v; }},
        {"output", [](ExperimentConfig& c, const std::string& v) { c.output = v; }},
    };
    return table;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (dim != 2 && dim != 3) throw ValidationError("dim must be 2 or 3");
    if (n < 4 || n % 2 != 0) throw ValidationError("n must be an even integer >= 4");
    if (!(L > 0.0) || !std::isfinite(L)) throw ValidationError("L must be positive");
    if (M < 1) throw ValidationError("M must be at least 1");
    if (!(gamma >= 1.0)) throw ValidationError("gamma must be >= 1");
    if (count < 1) throw ValidationError("count must be at least 1");
    if (levels < 1 || levels > 6) throw ValidationError("levels must lie in 1..6");
    if (!(delta > 0.0)) throw ValidationError("delta must be positive");
    if (!(tol > 0.0)) throw ValidationError("tol must be positive");
    if (max_iter < 1) throw ValidationError("max_iter must be at least 1");
    if (steps < 1) throw ValidationError("steps must be at least 1");
    for (double t : T) {
        if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("every T must be positive and finite");
    }
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        const auto eq = body.find('=');
        const std::string where = "config line " + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw ValidationError(where + "expected key=value");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ValidationError(where + "unknown key '" + key + "'");
        try {
            it->second(cfg, value);
        } catch (const ValidationError& e) {
            throw ValidationError(where + key + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config '" + path + "'");
    return parse_config(in);
}

std::string emit_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "experiment=" << c.experiment << '\n'
       << "dim=" << c.dim << '\n'
       << "n=" << c.n << '\n'
       << "L=" << fmt(c.L) << '\n'
       << "q=" << fmt(c.q) << '\n'
       << "r=" << fmt(c.r) << '\n'
       << "s=" << fmt(c.s) << '\n'
       << "q_tilde=" << fmt(c.q_tilde) << '\n'
       << "p=" << fmt(c.p) << '\n'
       << "T=" << fmt(c.T) << '\n'
       << "M=" << c.M << '\n'
       << "gamma=" << fmt(c.gamma) << '\n'
       << "family=" << c.family << '\n'
       << "seed=" << c.seed << '\n'
       << "count=" << c.count << '\n'
       << "band_min=" << c.band_min << '\n'
       << "band_max=" << c.band_max << '\n'
       << "mode=" << c.mode[0] << ',' << c.mode[1] << ',' << c.mode[2] << '\n'
       << "width=" << fmt(c.width) << '\n'
       << "exponent=" << fmt(c.exponent) << '\n'
       << "amplitude=" << fmt(c.amplitude) << '\n'
       << "levels=" << c.levels << '\n'
       << "delta=" << fmt(c.delta) << '\n'
       << "tol=" << fmt(c.tol) << '\n'
       << "max_iter=" << c.max_iter << '\n'
       << "steps=" << c.steps << '\n'
       << "dump=" << c.dump << '\n'
       << "output=" << c.output << '\n';
    return os.str();
}

}  // namespace mildflow
