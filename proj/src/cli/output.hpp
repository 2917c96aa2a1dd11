#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace censorlab::cli {

using Record = nlohmann::ordered_json;

enum class Format { Table, Json, Csv };

/// Shortest text that parses back to the same double (up to 17 significant digits).
std::string format_number(double value);

/// Non-finite doubles become JSON null.
Record number(double value);

/// Write records in the chosen format. A single record prints as an object in
/// JSON and as key/value lines in table form unless `force_array` is set.
void emit(std::ostream& os, Format format, const std::vector<Record>& rows,
          bool force_array = false);

void write_csv(std::ostream& os, const std::vector<Record>& rows);

}  // namespace censorlab::cli
