#include "qenc/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qenc/format.hpp"

namespace qenc {
namespace {

// Whole-file state machine so quoted fields may contain commas, quotes and
// newlines.
std::vector<std::vector<std::string>> parse_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;  // the next field exists even if empty
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
        break;
    }
  }
  if (in_quotes) throw std::invalid_argument("unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

std::string quote_if_needed(std::string_view cell) {
  const bool needs = cell.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs) return std::string(cell);
  std::string out;
  out.reserve(cell.size() + 2);
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvSchema& schema) {
  const auto records = parse_records(text);
  if (records.empty()) throw std::invalid_argument("empty file: no header row");
  const std::vector<std::string>& header = records.front();

  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) index.emplace(header[i], i);

  const auto column_index = [&](const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end()) {
      throw std::invalid_argument("missing column '" + name + "'");
    }
    return it->second;
  };

  std::vector<std::size_t> cat_idx;
  std::vector<std::size_t> num_idx;
  for (const auto& name : schema.categorical) cat_idx.push_back(column_index(name));
  for (const auto& name : schema.numeric) num_idx.push_back(column_index(name));
  const std::size_t target_idx = column_index(schema.target);

  const std::size_t n = records.size() - 1;
  Dataset data;
  data.cat_names = schema.categorical;
  data.cat_cols.assign(cat_idx.size(), {});
  data.num_names = schema.numeric;
  data.num_cols.assign(num_idx.size(), {});
  data.target_name = schema.target;
  for (auto& col : data.cat_cols) col.reserve(n);
  for (auto& col : data.num_cols) col.reserve(n);
  data.target.reserve(n);

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    const std::string row_label = "row " + std::to_string(r);
    if (row.size() != header.size()) {
      throw std::invalid_argument(row_label + ": expected " +
                                  std::to_string(header.size()) +
                                  " fields, got " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cat_idx.size(); ++c) {
      const std::string& cell = row[cat_idx[c]];
      data.cat_cols[c].push_back(std::string(category_label(cell)));
    }
    for (std::size_t c = 0; c < num_idx.size(); ++c) {
      const auto value = parse_double(row[num_idx[c]]);
      if (!value) {
        throw std::invalid_argument(row_label + ": column '" +
                                    schema.numeric[c] + "' not numeric");
      }
      data.num_cols[c].push_back(*value);
    }
    const auto y = parse_double(row[target_idx]);
    if (!y) throw std::invalid_argument(row_label + ": target not numeric");
    data.target.push_back(*y);
  }
  return data;
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), schema);
}

void write_csv(std::ostream& out, const Dataset& data) {
  data.validate();
  bool first = true;
  const auto emit = [&](std::string_view cell) {
    if (!first) out << ',';
    out << quote_if_needed(cell);
    first = false;
  };
  for (const auto& name : data.cat_names) emit(name);
  for (const auto& name : data.num_names) emit(name);
  emit(data.target_name);
  out << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    first = true;
    for (const auto& col : data.cat_cols) emit(col[i]);
    for (const auto& col : data.num_cols) emit(format_double(col[i]));
    emit(format_double(data.target[i]));
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open file '" + path.string() + "'");
  }
  write_csv(out, data);
}

}  // namespace qenc
