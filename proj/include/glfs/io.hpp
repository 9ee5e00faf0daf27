#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "glfs/types.hpp"

namespace glfs::io {

/// CSV, one feature per row, comma-separated finite decimals. A first row
/// containing any non-numeric token is treated as a header and skipped.
/// Errors name the offending (1-based) line.
DataMatrix parse_matrix(std::string_view text);
DataMatrix load_matrix(const std::filesystem::path& path);

/// One class per line. If every entry is an integer the values are used
/// as-is; otherwise entries are mapped to dense ids in first-appearance order.
std::vector<int> parse_labels(std::string_view text);
std::vector<int> load_labels(const std::filesystem::path& path);

/// One integer index per line.
std::vector<Index> parse_indices(std::string_view text);
std::vector<Index> load_indices(const std::filesystem::path& path);

/// Feature indices in file order from a `feature_index<TAB>value` table.
std::vector<Index> parse_ranked_features(std::string_view text);
std::vector<Index> load_ranked_features(const std::filesystem::path& path);

/// %.12g
std::string format_number(double value);
/// %.17g (round-trips exactly)
std::string format_exact(double value);

std::string matrix_to_csv(const Matrix& values);

std::string read_file(const std::filesystem::path& path);

/// Files written by one command. Content is staged next to the target and
/// renamed into place on commit(); staged files that were never committed are
/// deleted when the set is destroyed, so a failed command leaves no partial
/// output behind.
class OutputSet {
 public:
  OutputSet() = default;
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet();

  void write(const std::filesystem::path& path, std::string_view content);
  void commit();

 private:
  struct Staged {
    std::filesystem::path target;
    std::filesystem::path temp;
  };
  std::vector<Staged> staged_;
};

}  // namespace glfs::io
