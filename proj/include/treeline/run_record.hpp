#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace treeline {

using FieldValue = std::variant<bool, std::int64_t, double, std::string>;
/// Ordered key/value pairs; order is preserved in every output format.
using Fields = std::vector<std::pair<std::string, FieldValue>>;

/// One machine-readable result line of the command-line tool.
struct RunRecord {
    std::string command;
    Fields parameters;
    Fields outputs;
    std::string version;
    std::optional<std::uint64_t> seed;

    RunRecord& param(std::string key, FieldValue value);
    RunRecord& output(std::string key, FieldValue value);
    const FieldValue* find_output(std::string_view key) const;

    bool operator==(const RunRecord&) const = default;
};

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);
std::string format_value(const FieldValue& v);

std::string to_json_line(const RunRecord& r);
RunRecord from_json_line(std::string_view line);

/// Columns: command, parameters..., outputs..., version, seed.
std::string csv_header(const RunRecord& r);
std::string csv_row(const RunRecord& r);
std::vector<std::string> split_csv_line(std::string_view line);

enum class OutputFormat { json, csv };
OutputFormat parse_output_format(const std::string& s);

/// Writes records in one format. CSV repeats the header only when the
/// column set changes.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}
    void write(const RunRecord& r);

private:
    std::ostream& out_;
    OutputFormat format_;
    std::string last_header_;
};

}  // namespace treeline
