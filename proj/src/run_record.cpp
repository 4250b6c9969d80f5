#include "treeline/run_record.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "treeline/errors.hpp"

namespace treeline {

using ordered_json = nlohmann::ordered_json;

RunRecord& RunRecord::param(std::string key, FieldValue value) {
    parameters.emplace_back(std::move(key), std::move(value));
    return *this;
}

RunRecord& RunRecord::output(std::string key, FieldValue value) {
    outputs.emplace_back(std::move(key), std::move(value));
    return *this;
}

const FieldValue* RunRecord::find_output(std::string_view key) const {
    for (const auto& [k, v] : outputs)
        if (k == key) return &v;
    return nullptr;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_value(const FieldValue& v) {
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, v);
}

namespace {

ordered_json fields_to_json(const Fields& fields) {
    ordered_json obj = ordered_json::object();
    for (const auto& [k, v] : fields)
        std::visit([&](const auto& x) { obj[k] = x; }, v);
    return obj;
}

Fields fields_from_json(const ordered_json& obj) {
    Fields out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto& v = it.value();
        if (v.is_boolean())
            out.emplace_back(it.key(), v.get<bool>());
        else if (v.is_number_integer())
            out.emplace_back(it.key(), v.get<std::int64_t>());
        else if (v.is_number_float())
            out.emplace_back(it.key(), v.get<double>());
        else if (v.is_string())
            out.emplace_back(it.key(), v.get<std::string>());
        else
            throw DomainError("unsupported field type for key '" + it.key() + "'");
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_json_line(const RunRecord& r) {
    ordered_json j;
    j["command"] = r.command;
    j["parameters"] = fields_to_json(r.parameters);
    j["outputs"] = fields_to_json(r.outputs);
    j["version"] = r.version;
    j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
    return j.dump();
}

RunRecord from_json_line(std::string_view line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed record: ") + e.what());
    }
    RunRecord r;
    r.command = j.at("command").get<std::string>();
    r.parameters = fields_from_json(j.at("parameters"));
    r.outputs = fields_from_json(j.at("outputs"));
    r.version = j.at("version").get<std::string>();
    if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
    return r;
}

std::string csv_header(const RunRecord& r) {
    std::string h = "command";
    for (const auto& [k, v] : r.parameters) h += "," + csv_escape(k);
    for (const auto& [k, v] : r.outputs) h += "," + csv_escape(k);
    return h + ",version,seed";
}

std::string csv_row(const RunRecord& r) {
    std::string row = csv_escape(r.command);
    for (const auto& [k, v] : r.parameters) row += "," + csv_escape(format_value(v));
    for (const auto& [k, v] : r.outputs) row += "," + csv_escape(format_value(v));
    row += "," + csv_escape(r.version) + ",";
    if (r.seed) row += std::to_string(*r.seed);
    return row;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    return cells;
}

OutputFormat parse_output_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw DomainError("unknown output format '" + s + "'");
}

void RecordWriter::write(const RunRecord& r) {
    if (format_ == OutputFormat::json) {
        out_ << to_json_line(r) << '\n';
        return;
    }
    const std::string header = csv_header(r);
    if (header != last_header_) {
        out_ << header << '\n';
        last_header_ = header;
    }
    out_ << csv_row(r) << '\n';
}

}  // namespace treeline
