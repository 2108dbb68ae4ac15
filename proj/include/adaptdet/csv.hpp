/**
 * @file csv.hpp
 * @brief Result tables: `%.10g` reals, LF line endings, empty fields for
 *        inapplicable columns, atomic file output.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace adaptdet {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string format_real(double x);
std::string format_real(const std::optional<double>& x);

void write_csv(const Table& table, std::ostream& out);
/// Writes to `path.tmp` and renames over @p path; the temporary is removed on failure.
void write_csv_file(const Table& table, const std::string& path);
Table read_csv(std::istream& in);

}  // namespace adaptdet
