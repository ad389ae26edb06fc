#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qps/dense_operator.hpp"

namespace qps::cli {

inline constexpr int format_version = 1;

class malformed_input : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Square complex matrix as read from disk.
struct MatrixFile {
    std::size_t dim = 0;
    std::vector<cplx> entries; // row-major
    std::string name;
    std::string basis;

    DenseOperator to_operator() const { return {dim, entries}; }
};

/// Round-trip-exact decimal (17 significant digits); negative zero prints as 0.
inline std::string format_double(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_complex(cplx z) { return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]"; }

inline std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

/**
 * Writer for the versioned table schema shared by matrices, coefficient
 * grids and Wigner tables. Field order is fixed so output is byte-stable.
 */
class TableWriter {
public:
    TableWriter& field(std::string_view key, std::string raw_value) {
        fields_.emplace_back(std::string(key), std::move(raw_value));
        return *this;
    }
    TableWriter& string_field(std::string_view key, std::string_view value) { return field(key, json_string(value)); }
    TableWriter& number_field(std::string_view key, double value) { return field(key, format_double(value)); }
    TableWriter& complex_field(std::string_view key, cplx value) { return field(key, format_complex(value)); }
    TableWriter& bool_field(std::string_view key, bool value) { return field(key, value ? "true" : "false"); }

    std::string json(std::size_t dim, std::span<const cplx> entries) const {
        std::ostringstream os;
        os << "{\n  \"format_version\": " << format_version << ",\n";
        for (const auto& [k, v] : fields_) {
            os << "  " << json_string(k) << ": " << v << ",\n";
        }
        os << "  \"dim\": " << dim << ",\n  \"entries\": [";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            os << (i == 0 ? "\n    " : ",\n    ") << format_complex(entries[i]);
        }
        os << "\n  ]\n}\n";
        return os.str();
    }

    static std::string csv(std::size_t dim, std::span<const cplx> entries) {
        std::ostringstream os;
        os << "row,col,re,im\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            os << i / dim << ',' << i % dim << ',' << format_double(entries[i].real()) << ','
               << format_double(entries[i].imag()) << '\n';
        }
        return os.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

namespace detail {
inline double read_number(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) {
        throw malformed_input(where + ": expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw malformed_input(where + ": non-finite value");
    }
    return x;
}

inline std::size_t read_size(const nlohmann::json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw malformed_input(std::string("field '") + key + "': expected a positive integer");
    }
    return v.get<std::size_t>();
}
} // namespace detail

/**
 * Parse a MatrixFile. Accepts "dim" or a "rows"/"cols" pair, and "entries"
 * as a flat row-major list of [re, im] pairs (integers or decimals).
 */
inline MatrixFile parse_matrix_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw malformed_input(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw malformed_input("top level: expected a JSON object");
    }
    if (doc.contains("format_version") &&
        (!doc["format_version"].is_number_integer() || doc["format_version"].get<int>() > format_version)) {
        throw malformed_input("field 'format_version': unsupported version");
    }

    MatrixFile out;
    if (doc.contains("rows") || doc.contains("cols")) {
        if (!doc.contains("rows") || !doc.contains("cols")) {
            throw malformed_input("fields 'rows'/'cols': both must be present");
        }
        const std::size_t rows = detail::read_size(doc, "rows");
        const std::size_t cols = detail::read_size(doc, "cols");
        if (rows != cols) {
            throw malformed_input("matrix is not square (rows=" + std::to_string(rows) +
                                  ", cols=" + std::to_string(cols) + ")");
        }
        out.dim = rows;
        if (doc.contains("dim") && detail::read_size(doc, "dim") != rows) {
            throw malformed_input("field 'dim' disagrees with 'rows'/'cols'");
        }
    } else if (doc.contains("dim")) {
        out.dim = detail::read_size(doc, "dim");
    } else {
        throw malformed_input("field 'dim' missing");
    }

    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        throw malformed_input("field 'entries': missing or not an array");
    }
    const auto& entries = doc["entries"];
    const std::size_t expected = out.dim * out.dim;
    if (entries.size() < expected) {
        throw malformed_input("field 'entries': expected " + std::to_string(expected) + " entries for dim " +
                              std::to_string(out.dim) + ", found " + std::to_string(entries.size()) +
                              "; missing entry index " + std::to_string(entries.size()));
    }
    if (entries.size() > expected) {
        throw malformed_input("field 'entries': expected " + std::to_string(expected) + " entries for dim " +
                              std::to_string(out.dim) + ", found " + std::to_string(entries.size()) +
                              " (matrix is not square)");
    }
    out.entries.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        const std::string where = "entries[" + std::to_string(i) + "]";
        const auto& e = entries[i];
        if (!e.is_array() || e.size() != 2) {
            throw malformed_input(where + ": expected a [re, im] pair");
        }
        out.entries.emplace_back(detail::read_number(e[0], where + "[0]"), detail::read_number(e[1], where + "[1]"));
    }
    if (doc.contains("name") && doc["name"].is_string()) {
        out.name = doc["name"].get<std::string>();
    }
    if (doc.contains("basis") && doc["basis"].is_string()) {
        out.basis = doc["basis"].get<std::string>();
    }
    return out;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Write via a sibling temp file and rename, so readers never see a partial file.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw io_error("cannot open '" + path.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw io_error("write to '" + path.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw io_error("cannot move output into '" + path.string() + "'");
    }
}

} // namespace qps::cli
