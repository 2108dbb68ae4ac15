/**
 * @file config.hpp
 * @brief `key = value` experiment files and typed value parsing.
 *
 * Lines are `key = value`; `#` starts a comment; blank lines are ignored.
 * Lists are comma separated, and real lists also accept `start:stop:step`.
 */
#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace adaptdet {

using ConfigMap = std::map<std::string, std::string>;

/// Parses a config stream; @p source names it in error messages.
ConfigMap parse_config(std::istream& in, const std::string& source = "<config>");
ConfigMap read_config_file(const std::string& path);

/// Entries of @p overrides replace those of @p base.
ConfigMap merge_config(ConfigMap base, const ConfigMap& overrides);

double parse_real(const std::string& key, const std::string& value);
long long parse_int(const std::string& key, const std::string& value);
std::uint64_t parse_u64(const std::string& key, const std::string& value);
std::vector<std::string> split_list(const std::string& value);
std::vector<double> parse_real_list(const std::string& key, const std::string& value);

}  // namespace adaptdet
