#include "rotorchain/scan_result.hpp"

#include "rotorchain/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace rotorchain {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ScanResult::ScanResult(std::vector<std::string> header) : header_(std::move(header)) {}

void ScanResult::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size())
        throw DomainError("ScanResult: row has " + std::to_string(row.size()) + " cells, header has " +
                          std::to_string(header_.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (const auto* x = std::get_if<double>(&row[i]); x && !std::isfinite(*x))
            throw DomainError("ScanResult: non-finite value in column " + header_[i]);
    }
    rows_.push_back(std::move(row));
}

std::size_t ScanResult::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name)
            return i;
    throw DomainError("ScanResult: no column named " + name);
}

double ScanResult::number(std::size_t row, const std::string& name) const {
    const Cell& c = rows_.at(row).at(column(name));
    if (const auto* x = std::get_if<double>(&c))
        return *x;
    if (const auto* i = std::get_if<std::int64_t>(&c))
        return static_cast<double>(*i);
    throw DomainError("ScanResult: column " + name + " is not numeric");
}

std::string ScanResult::text(std::size_t row, const std::string& name) const {
    const Cell& c = rows_.at(row).at(column(name));
    if (const auto* s = std::get_if<std::string>(&c))
        return *s;
    throw DomainError("ScanResult: column " + name + " is not text");
}

void ScanResult::write_csv(std::ostream& os) const {
    for (const auto& [key, value] : metadata_.items())
        os << "# " << key << ": " << value.dump() << '\n';
    for (std::size_t i = 0; i < header_.size(); ++i)
        os << (i ? "," : "") << header_[i];
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                os << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        os << format_double(v);
                    else
                        os << v;
                },
                row[i]);
        }
        os << '\n';
    }
}

nlohmann::ordered_json ScanResult::to_json() const {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_;
    j["header"] = header_;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row)
            std::visit([&](const auto& v) { r.push_back(v); }, c);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

void ScanResult::append(const ScanResult& other) {
    if (other.header_ != header_)
        throw DomainError("ScanResult::append: header mismatch");
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

} // namespace rotorchain
