#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sphull/error.hpp"
#include "sphull/harness.hpp"

namespace sphull::harness {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    // whole numbers such as sample sizes stay in plain digits
    auto r = (v == std::trunc(v) && std::fabs(v) < 1e16)
                 ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed)
                 : std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

void Table::add(std::vector<std::string> row) {
    if (row.size() != header.size()) fail(ErrorKind::Io, "table row width differs from header");
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    fail(ErrorKind::Join, "missing column '" + name + "'");
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::optional<double> as_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

std::string Table::to_csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += quote(r[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

std::string Table::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        for (std::size_t i = 0; i < header.size(); ++i) {
            const auto num = as_number(r[i]);
            if (num && std::isfinite(*num)) o[header[i]] = *num;
            else o[header[i]] = r[i];
        }
        arr.push_back(std::move(o));
    }
    return arr.dump(1) + "\n";
}

Table parse_csv(const std::string& text) {
    Table t;
    std::vector<std::string> row;
    std::string cell;
    bool inq = false, any = false;
    auto end_row = [&] {
        row.push_back(cell);
        cell.clear();
        if (t.header.empty()) t.header = row;
        else if (row.size() != t.header.size()) fail(ErrorKind::Join, "csv row width differs from header");
        else t.rows.push_back(row);
        row.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (inq) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    inq = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            inq = true;
            any = true;
        } else if (c == ',') {
            row.push_back(cell);
            cell.clear();
            any = true;
        } else if (c == '\n') {
            end_row();
        } else if (c != '\r') {
            cell += c;
            any = true;
        }
    }
    if (any || !cell.empty()) end_row();
    if (t.header.empty()) fail(ErrorKind::Io, "csv has no header row");
    return t;
}

Table read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
    out << content;
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace sphull::harness
