#ifndef QENC_CSV_HPP_
#define QENC_CSV_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qenc/dataset.hpp"

namespace qenc {

// Which header columns to keep and how to parse them. Undeclared columns are
// dropped.
struct CsvSchema {
  std::vector<std::string> categorical;
  std::vector<std::string> numeric;
  std::string target;
};

// RFC-4180-style CSV: comma separated, double-quote escaping, mandatory
// header, UTF-8, CRLF tolerated. Empty categorical cells become the missing
// label. Errors name the offending column or 1-based data row.
Dataset parse_csv(std::string_view text, const CsvSchema& schema);
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema);

// Header then rows: categorical columns, numeric columns, target. Numbers are
// written as shortest round-trip decimals.
void write_csv(std::ostream& out, const Dataset& data);
void write_csv(const std::filesystem::path& path, const Dataset& data);

}  // namespace qenc

#endif  // QENC_CSV_HPP_
