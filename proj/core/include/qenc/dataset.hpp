#ifndef QENC_DATASET_HPP_
#define QENC_DATASET_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qenc {

// Label that empty categorical cells collapse to; keeps every row.
inline constexpr char kMissingLabel[] = "␀MISSING";

inline std::string_view category_label(std::string_view cell) {
  return cell.empty() ? std::string_view(kMissingLabel) : cell;
}

// Column-oriented table: string-valued categorical columns, numeric columns
// and one numeric target, all of equal length.
struct Dataset {
  std::vector<std::string> cat_names;
  std::vector<std::vector<std::string>> cat_cols;
  std::vector<std::string> num_names;
  std::vector<std::vector<double>> num_cols;
  std::string target_name = "y";
  std::vector<double> target;

  std::size_t rows() const { return target.size(); }

  void add_cat(std::string name, std::vector<std::string> values);
  void add_num(std::string name, std::vector<double> values);

  // nullptr when absent.
  const std::vector<std::string>* find_cat(std::string_view name) const;
  const std::vector<double>* find_num(std::string_view name) const;

  // Throws std::invalid_argument on ragged columns, duplicate names or a
  // non-finite target.
  void validate() const;

  bool operator==(const Dataset&) const = default;
};

// Number of distinct labels in a categorical column (empty cells counted as
// the missing label). Throws on unknown column.
std::size_t cardinality(const Dataset& data, std::string_view cat_name);

// Row subset, in the order given. Indices must be < rows().
Dataset slice(const Dataset& data, std::span<const std::size_t> indices);

}  // namespace qenc

#endif  // QENC_DATASET_HPP_
