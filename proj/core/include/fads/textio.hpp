#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Deterministic text emission. All floating-point output uses 17 significant
// digits, '.' decimal separator and LF line endings, so re-running a command
// with the same inputs reproduces files byte for byte.

namespace fads {

std::string format_double(double v);  // %.17g

// Streaming writer for JSON with caller-controlled key order.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& begin_object(std::string_view key);
    JsonWriter& end_object();
    JsonWriter& begin_array(std::string_view key);
    JsonWriter& end_array();
    JsonWriter& field(std::string_view key, double v);
    JsonWriter& field(std::string_view key, std::int64_t v);
    JsonWriter& field(std::string_view key, std::uint64_t v);
    JsonWriter& field(std::string_view key, bool v);
    JsonWriter& field(std::string_view key, std::string_view v);
    JsonWriter& null_field(std::string_view key);
    JsonWriter& element(double v);

    const std::string& str() const { return out_; }

private:
    void indent();
    void value_prefix();
    void key_prefix(std::string_view key);

    std::string out_;
    int depth_ = 0;
    bool first_ = true;
};

std::string json_escape(std::string_view s);

// One CSV row, comma separated, LF terminated.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    const std::string& str() const { return out_; }
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    std::size_t columns() const { return n_columns_; }

private:
    std::string out_;
    std::size_t n_columns_;
};

// Writes content to path, creating parent directories. Throws with the path
// name on failure.
void write_file(const std::string& path, std::string_view content);

}  // namespace fads
