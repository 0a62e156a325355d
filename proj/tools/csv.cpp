#include "mgfas/csv.hpp"

#include "mgfas/errors.hpp"

#include <charconv>
#include <cmath>

namespace mgfas {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void CsvWriter::row(std::vector<CsvCell> cells) {
    if (cells.size() != header_.size())
        throw InvalidParams("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header_.size()));
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (const CsvCell& c : cells) {
        if (const auto* s = std::get_if<std::string>(&c))
            text.push_back(*s);
        else if (const auto* i = std::get_if<long long>(&c))
            text.push_back(std::to_string(*i));
        else
            text.push_back(format_number(std::get<double>(c)));
    }
    rows_.push_back(std::move(text));
}

void CsvWriter::write(std::ostream& os, const std::string& config_hash, std::uint64_t seed, int threads) const {
    os << "# config=" << config_hash << " seed=" << seed << " threads=" << threads << '\n';
    auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
}

} // namespace mgfas
