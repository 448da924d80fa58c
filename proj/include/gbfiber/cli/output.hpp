#pragma once

// Deterministic JSON and RFC-4180 CSV writers. Every floating-point number is
// printed with 17 significant digits.

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../errors.hpp"

namespace gbfiber::cli {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) throw IntegrityError("non-finite value in output");
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const nlohmann::json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) { os << "{}"; return; }
        os << '{' << nl;
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) os << ',' << nl;
            first = false;
            os << pad << nlohmann::json(k).dump() << (indent > 0 ? ": " : ":");
            write_json(os, v, indent, depth + 1);
        }
        os << nl << close << '}';
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) { os << "[]"; return; }
        // short numeric arrays stay on one line
        bool flat = j.size() <= 4;
        for (const auto& v : j) flat = flat && v.is_primitive();
        if (flat) {
            os << '[';
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) os << ", ";
                write_json(os, j[k], 0, 0);
            }
            os << ']';
            return;
        }
        os << '[' << nl;
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) os << ',' << nl;
            os << pad;
            write_json(os, j[k], indent, depth + 1);
        }
        os << nl << close << ']';
        return;
    }
    case nlohmann::json::value_t::number_float:
        os << format_double(j.get<double>());
        return;
    default:
        os << j.dump();
    }
}

} // namespace detail

inline std::string to_json_text(const nlohmann::json& j, int indent = 2) {
    std::ostringstream os;
    detail::write_json(os, j, indent, 0);
    os << '\n';
    return os.str();
}

inline nlohmann::json complex_json(std::complex<double> z) { return {z.real(), z.imag()}; }

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

    void row(const std::vector<std::string>& fields) {
        if (fields.size() != columns_) throw IntegrityError("CSV row has the wrong number of fields");
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k) out_ << ',';
            out_ << csv_field(fields[k]);
        }
        out_ << "\r\n";
    }

    std::string str() const { return out_.str(); }

private:
    std::size_t columns_;
    std::ostringstream out_;
};

} // namespace gbfiber::cli
