#pragma once
// Minimal RFC-4180-ish CSV reader/writer. Handles quoted fields with
// embedded commas and doubled quotes; does not handle embedded newlines
// (none of the file formats here permit them).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"

namespace linkscope::csv {

inline std::vector<std::string> split_line(const std::string& line, long line_number = -1) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty()) throw parse_error("stray quote in unquoted field", line_number);
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\r' && i + 1 == line.size()) {
            // tolerate CRLF
        } else {
            cur += c;
        }
    }
    if (quoted) throw parse_error("unterminated quoted field", line_number);
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    return out;
}

// Reads a whole CSV file; calls row_fn(fields, line_number) per data row after
// checking the header matches `expected_header` exactly.
template <typename RowFn>
void read_file(const std::string& path, const std::vector<std::string>& expected_header, RowFn row_fn) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty file: " + path);
    auto header = split_line(line, 1);
    if (header != expected_header) {
        std::ostringstream msg;
        msg << "unexpected header in " << path << ": got '" << join_row(header) << "'";
        throw parse_error(msg.str(), 1);
    }
    long line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        row_fn(split_line(line, line_number), line_number);
    }
}

}  // namespace linkscope::csv
