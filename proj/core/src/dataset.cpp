#include "qenc/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace qenc {

void Dataset::add_cat(std::string name, std::vector<std::string> values) {
  cat_names.push_back(std::move(name));
  cat_cols.push_back(std::move(values));
}

void Dataset::add_num(std::string name, std::vector<double> values) {
  num_names.push_back(std::move(name));
  num_cols.push_back(std::move(values));
}

const std::vector<std::string>* Dataset::find_cat(std::string_view name) const {
  for (std::size_t i = 0; i < cat_names.size(); ++i) {
    if (cat_names[i] == name) return &cat_cols[i];
  }
  return nullptr;
}

const std::vector<double>* Dataset::find_num(std::string_view name) const {
  for (std::size_t i = 0; i < num_names.size(); ++i) {
    if (num_names[i] == name) return &num_cols[i];
  }
  return nullptr;
}

void Dataset::validate() const {
  if (cat_names.size() != cat_cols.size() || num_names.size() != num_cols.size()) {
    throw std::invalid_argument("dataset: column name/value count mismatch");
  }
  const std::size_t n = rows();
  for (const auto& col : cat_cols) {
    if (col.size() != n) throw std::invalid_argument("dataset: ragged categorical column");
  }
  for (const auto& col : num_cols) {
    if (col.size() != n) throw std::invalid_argument("dataset: ragged numeric column");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& name : cat_names) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("dataset: duplicate column '" + name + "'");
    }
  }
  for (const auto& name : num_names) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("dataset: duplicate column '" + name + "'");
    }
  }
  if (!seen.insert(target_name).second) {
    throw std::invalid_argument("dataset: duplicate column '" + target_name + "'");
  }
  for (double y : target) {
    if (!std::isfinite(y)) throw std::invalid_argument("non-finite input");
  }
}

std::size_t cardinality(const Dataset& data, std::string_view cat_name) {
  const auto* col = data.find_cat(cat_name);
  if (col == nullptr) {
    throw std::invalid_argument("unknown column '" + std::string(cat_name) + "'");
  }
  std::unordered_set<std::string_view> distinct;
  for (const auto& cell : *col) distinct.insert(category_label(cell));
  return distinct.size();
}

Dataset slice(const Dataset& data, std::span<const std::size_t> indices) {
  for (std::size_t i : indices) {
    if (i >= data.rows()) throw std::out_of_range("slice: row index out of range");
  }
  Dataset out;
  out.cat_names = data.cat_names;
  out.num_names = data.num_names;
  out.target_name = data.target_name;
  out.cat_cols.reserve(data.cat_cols.size());
  for (const auto& col : data.cat_cols) {
    std::vector<std::string> sub;
    sub.reserve(indices.size());
    for (std::size_t i : indices) sub.push_back(col[i]);
    out.cat_cols.push_back(std::move(sub));
  }
  out.num_cols.reserve(data.num_cols.size());
  for (const auto& col : data.num_cols) {
    std::vector<double> sub;
    sub.reserve(indices.size());
    for (std::size_t i : indices) sub.push_back(col[i]);
    out.num_cols.push_back(std::move(sub));
  }
  out.target.reserve(indices.size());
  for (std::size_t i : indices) out.target.push_back(data.target[i]);
  return out;
}

}  // namespace qenc
