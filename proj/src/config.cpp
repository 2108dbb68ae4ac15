#include "adaptdet/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "adaptdet/error.hpp"

namespace adaptdet {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what) {
    throw Error(ErrorKind::config, "invalid value for '" + key + "': '" + value + "' (" + what + ")");
}

}  // namespace

ConfigMap parse_config(std::istream& in, const std::string& source) {
    ConfigMap out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::config, source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorKind::config, source + ":" + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

ConfigMap read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open config file '" + path + "'");
    return parse_config(in, path);
}

ConfigMap merge_config(ConfigMap base, const ConfigMap& overrides) {
    for (const auto& [k, v] : overrides) base[k] = v;
    return base;
}

double parse_real(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v.empty()) bad_value(key, value, "empty");
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x)) bad_value(key, value, "not a real");
    return x;
}

long long parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v.empty()) bad_value(key, value, "empty");
    char* end = nullptr;
    errno = 0;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || errno == ERANGE) bad_value(key, value, "not an integer");
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v.empty() || v[0] == '-') bad_value(key, value, "not a non-negative integer");
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 0);
    if (end != v.c_str() + v.size() || errno == ERANGE) bad_value(key, value, "not a non-negative integer");
    return x;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = value.find(',', start);
        const std::string item = trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) {
        const auto c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_real(key, item));
            continue;
        }
        const auto c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos) bad_value(key, item, "range must be start:stop:step");
        const double a = parse_real(key, item.substr(0, c1));
        const double b = parse_real(key, item.substr(c1 + 1, c2 - c1 - 1));
        const double step = parse_real(key, item.substr(c2 + 1));
        if (!(step > 0.0) || b < a) bad_value(key, item, "range needs start <= stop and step > 0");
        // Points are start + i·step so the grid carries no accumulated rounding.
        const auto count = static_cast<long long>(std::floor((b - a) / step + 1e-9));
        for (long long i = 0; i <= count; ++i) out.push_back(a + double(i) * step);
    }
    if (out.empty()) bad_value(key, value, "empty list");
    return out;
}

}  // namespace adaptdet
