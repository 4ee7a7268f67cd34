#include "ivlingam/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <set>

#include "ivlingam/error.hpp"

namespace ivlingam {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (field.empty()) return std::nullopt;
    if (field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

bool needs_quotes(std::string_view s) {
    return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view s) {
    if (!needs_quotes(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv_records(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // a bare line break yields one empty field; skip such blank lines
        if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
        record.clear();
    };

    std::size_t start = 0;
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) start = 3;

    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started || field.empty()) {
                    in_quotes = true;
                } else {
                    field.push_back(c);
                }
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_record();
                break;
            case '\n':
                end_record();
                break;
            default:
                field.push_back(c);
                field_started = true;
        }
    }
    if (in_quotes) throw Error(ErrorCode::InvalidArgument, "unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

Dataset read_csv(std::istream& in, const RoleMap& roles) {
    const auto records = parse_csv_records(in);
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "file has no header row");
    const auto& header = records.front();

    std::set<std::string_view> seen;
    for (const auto& [name, role] : roles) {
        if (!seen.insert(name).second)
            throw Error(ErrorCode::DuplicateRole, "column '" + name + "' is given more than one role");
    }

    struct Selected {
        std::size_t field;
        Column column;
    };
    std::vector<Selected> selected;
    for (std::size_t f = 0; f < header.size(); ++f) {
        const std::string name{trim(header[f])};
        for (const auto& [wanted, role] : roles) {
            if (wanted == name) selected.push_back({f, Column{name, role, {}}});
        }
    }
    for (const auto& [wanted, role] : roles) {
        bool found = false;
        for (const auto& s : selected) found = found || s.column.name == wanted;
        if (!found) throw Error(ErrorCode::MissingColumn, "header has no column '" + wanted + "'");
    }

    std::size_t bad_rows = 0;
    std::optional<std::pair<std::size_t, std::string>> first_bad;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        bool row_bad = false;
        for (auto& s : selected) {
            std::optional<double> v;
            if (s.field < rec.size()) v = parse_number(rec[s.field]);
            if (!v) {
                if (!first_bad) first_bad.emplace(r, s.column.name);
                row_bad = true;
                continue;
            }
            s.column.values.push_back(*v);
        }
        if (row_bad) ++bad_rows;
    }
    if (first_bad) throw NonNumericCellError(first_bad->first, first_bad->second, bad_rows);
    if (records.size() == 1) throw Error(ErrorCode::EmptyInput, "file has a header but no data rows");

    std::vector<Column> columns;
    columns.reserve(selected.size());
    for (auto& s : selected) columns.push_back(std::move(s.column));
    return Dataset(std::move(columns));
}

Dataset load_csv(const std::filesystem::path& path, const RoleMap& roles) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    return read_csv(in, roles);
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "cannot format value");
    return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const Dataset& data) {
    const auto cols = data.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out << ',';
        write_field(out, cols[c].name);
    }
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out << ',';
            out << format_double(cols[c].values[r]);
        }
        out << '\n';
    }
}

void save_csv(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    write_csv(out, data);
}

}  // namespace ivlingam
