#pragma once

// Tabular output of a parameter scan, with CSV and JSON writers.

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace rotorchain {

using Cell = std::variant<double, std::int64_t, std::string>;

class ScanResult {
public:
    explicit ScanResult(std::vector<std::string> header);

    /// Throws DomainError on a width mismatch or a non-finite value.
    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    nlohmann::ordered_json& metadata() { return metadata_; }
    const nlohmann::ordered_json& metadata() const { return metadata_; }

    std::size_t column(const std::string& name) const;
    double number(std::size_t row, const std::string& name) const;
    std::string text(std::size_t row, const std::string& name) const;

    /// `#`-prefixed metadata lines (one per top-level key), header, rows.
    /// Floating point values use 17 significant digits.
    void write_csv(std::ostream& os) const;
    nlohmann::ordered_json to_json() const;

    void append(const ScanResult& other);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
    nlohmann::ordered_json metadata_ = nlohmann::ordered_json::object();
};

/// "%.17g"
std::string format_double(double x);

} // namespace rotorchain
