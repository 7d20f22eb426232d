#include "fads/textio.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fads {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

void JsonWriter::indent() {
    for (int i = 0; i < depth_; ++i) out_ += "  ";
}

void JsonWriter::value_prefix() {
    if (out_.empty()) {  // root value
        first_ = false;
        return;
    }
    if (!first_) out_ += ",";
    out_ += "\n";
    indent();
    first_ = false;
}

void JsonWriter::key_prefix(std::string_view key) {
    value_prefix();
    out_ += '"';
    out_ += json_escape(key);
    out_ += "\": ";
}

JsonWriter& JsonWriter::begin_object() {
    value_prefix();
    out_ += "{";
    ++depth_;
    first_ = true;
    return *this;
}

JsonWriter& JsonWriter::begin_object(std::string_view key) {
    key_prefix(key);
    out_ += "{";
    ++depth_;
    first_ = true;
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += "\n";
    --depth_;
    indent();
    out_ += "}";
    first_ = false;
    return *this;
}

JsonWriter& JsonWriter::begin_array(std::string_view key) {
    key_prefix(key);
    out_ += "[";
    ++depth_;
    first_ = true;
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += "\n";
    --depth_;
    indent();
    out_ += "]";
    first_ = false;
    return *this;
}

JsonWriter& JsonWriter::field(std::string_view key, double v) {
    key_prefix(key);
    if (std::isfinite(v)) {
        out_ += format_double(v);
    } else {
        out_ += "null";  // JSON has no inf/nan
    }
    return *this;
}

JsonWriter& JsonWriter::field(std::string_view key, std::int64_t v) {
    key_prefix(key);
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(std::string_view key, std::uint64_t v) {
    key_prefix(key);
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(std::string_view key, bool v) {
    key_prefix(key);
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::field(std::string_view key, std::string_view v) {
    key_prefix(key);
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::null_field(std::string_view key) {
    key_prefix(key);
    out_ += "null";
    return *this;
}

JsonWriter& JsonWriter::element(double v) {
    value_prefix();
    out_ += std::isfinite(v) ? format_double(v) : "null";
    return *this;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : n_columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ',';
        out_ += header[i];
    }
    out_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_) throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ += ',';
        out_ += format_double(values[i]);
    }
    out_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_) throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        out_ += cells[i];
    }
    out_ += '\n';
}

void write_file(const std::string& path, std::string_view content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fads
