#pragma once

#include "magsim/config.hpp"
#include "magsim/scenarios.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace magsim {

/// Empty (null), numeric, or text table entry.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Index of a column; throws Error if absent.
    std::size_t column(const std::string& name) const;
};

/// Wide layout, one row per grid point. Columns: axes, then T12, T21,
/// Tiso_db, then per reported pair E_xx_12, E_xx_21, E_xx_iso_db (direction
/// suffix dropped for single-direction sweeps), then margin_<dir>, and for
/// entanglement sweeps status_<dir> and validation_<dir>.
Table tabulate(const SweepResult& result);

/// 17 significant digits; "inf" / "-inf" for infinities, empty for NaN.
std::string format_number(double v);

/// Writes CSV (header plus rows) or a JSON array of objects keyed by column.
/// Returns the number of bytes written. Throws Error on a stream failure.
std::size_t emit(const Table& table, OutputFormat format, std::ostream& out);
std::size_t emit(const SweepResult& result, OutputFormat format, std::ostream& out);

/// Parses CSV produced by emit. Numbers and inf become doubles, empty fields
/// become nulls, anything else stays text.
Table read_csv(std::istream& in);

} // namespace magsim
