#include "adaptdet/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "adaptdet/error.hpp"

namespace adaptdet {
namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_row(const std::vector<std::string>& row, std::ostream& out) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << quote(row[i]);
    }
    out << '\n';
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

}  // namespace

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string format_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

void write_csv(const Table& table, std::ostream& out) {
    write_row(table.header, out);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw Error(ErrorKind::contract, "csv row width differs from header");
        write_row(row, out);
    }
}

void write_csv_file(const Table& table, const std::string& path) {
    const std::string tmp = path + ".tmp";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error(ErrorKind::io, "cannot open '" + tmp + "' for writing");
            write_csv(table, out);
            out.flush();
            if (!out) throw Error(ErrorKind::io, "write to '" + tmp + "' failed");
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec) throw Error(ErrorKind::io, "cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw;
    }
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::io, "csv input is empty");
    t.header = split_row(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        t.rows.push_back(split_row(line));
        if (t.rows.back().size() != t.header.size()) throw Error(ErrorKind::io, "csv row width differs from header");
    }
    return t;
}

}  // namespace adaptdet
