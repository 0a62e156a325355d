#pragma once

// CSV emission: '#' provenance line, header row, comma-separated
// cells, numbers in shortest round-trip form.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace mgfas {

/// Shortest decimal text that parses back to exactly v ("nan", "inf", "-inf" otherwise).
std::string format_number(double v);

using CsvCell = std::variant<std::string, long long, double>;

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    /// Adds a row; throws InvalidParams when the cell count differs from the header.
    void row(std::vector<CsvCell> cells);

    /// "# config=<hash> seed=<seed> threads=<n>", header, rows.
    void write(std::ostream& os, const std::string& config_hash, std::uint64_t seed, int threads) const;

    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace mgfas
