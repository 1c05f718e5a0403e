#include "vnfq/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace vnfq {

namespace {

const std::vector<std::string>& all_keys() {
    static const std::vector<std::string> keys = {
        "p", "alpha", "mu1", "mu2", "mu3", "mu4", "mu5", "mu6",
        "M1", "M2", "M3", "M4", "M5"};
    return keys;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value, int line) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError("invalid numeric value for '" + key + "': '" + value + "'", line);
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value, int line) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError("invalid integer value for '" + key + "': '" + value + "'", line);
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

SystemParams parse_config(const std::string& text) {
    std::map<std::string, std::pair<std::string, int>> seen;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool known = false;
        for (const auto& k : all_keys()) known = known || (k == key);
        if (!known) throw ConfigError("unknown key '" + key + "'", lineno);
        if (seen.count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
        seen[key] = {value, lineno};
    }
    for (const auto& k : all_keys()) {
        if (!seen.count(k)) throw ConfigError("missing key '" + k + "'");
    }

    SystemParams params;
    auto value_of = [&](const std::string& k) { return seen.at(k); };
    {
        auto [v, ln] = value_of("p");
        params.p = parse_double("p", v, ln);
    }
    {
        auto [v, ln] = value_of("alpha");
        params.alpha = parse_double("alpha", v, ln);
    }
    for (int i = 0; i < 6; ++i) {
        const std::string k = "mu" + std::to_string(i + 1);
        auto [v, ln] = value_of(k);
        params.mu[i] = parse_double(k, v, ln);
    }
    for (int i = 0; i < 5; ++i) {
        const std::string k = "M" + std::to_string(i + 1);
        auto [v, ln] = value_of(k);
        params.buffer[i] = parse_int(k, v, ln);
    }
    return validate(params);
}

SystemParams load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const SystemParams& params) {
    std::ostringstream out;
    out << "p = " << format_double(params.p) << "\n";
    out << "alpha = " << format_double(params.alpha) << "\n";
    for (int i = 0; i < 6; ++i) {
        out << "mu" << (i + 1) << " = " << format_double(params.mu[i]) << "\n";
    }
    for (int i = 0; i < 5; ++i) {
        out << "M" << (i + 1) << " = " << params.buffer[i] << "\n";
    }
    return out.str();
}

void write_config(const SystemParams& params, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file '" + path + "'");
    out << format_config(params);
}

} // namespace vnfq
