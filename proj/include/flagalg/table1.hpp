#pragma once

#include <array>
#include <regex>
#include <string>
#include <utility>
#include <vector>

namespace flagalg::table1 {

/// Rows k = 1..5 of the published low-degree coefficient table, one string
/// per row, signs and brackets as printed.
inline const std::array<std::string, 5>& rows() {
  static const std::array<std::string, 5> r = {
    // k = 1
    "+[1]",
    // k = 2
    "+[2], +[r - 3, r - 2], -[1, 2]",
    // k = 3
    "+[3], -[1, 3], -[2, 3], +[1, 2, 3], -[1, r - 3, r - 2], +[r - 4, r - 3], "
    "+[r - 5, r - 3], +[r - 5, r - 3, r - 2], -[r - 5, r - 4, r - 3]",
    // k = 4
    "+[4], -[1, 4], -[2, 4], +[1, 2, 4], -[3, 4], +[1, 3, 4], +[2, 3, 4], -[1, 2, 3, 4], "
    "-[2, r - 3, r - 2], -[1, r - 4, r - 3], +[r - 5, r - 4], +[r - 6, r - 4], "
    "+[r - 6, r - 3, r - 2], -[r - 6, r - 5, r - 4], +[r - 7, r - 4], "
    "-[r - 7, r - 6, r - 4], -[r - 7, r - 5, r - 4], +[r - 7, r - 6, r - 5, r - 4], "
    "-[r - 7, r - 6, r - 3, r - 2], +[r - 7, r - 4, r - 3], +[r - 7, r - 5, r - 3], "
    "+[r - 7, r - 5, r - 3, r - 2], -[r - 7, r - 5, r - 4, r - 3]",
    // k = 5
    "+[5], -[1, 5], -[2, 5], +[1, 2, 5], -[3, 5], +[1, 3, 5], +[2, 3, 5], -[1, 2, 3, 5], "
    "-[4, 5], +[1, 4, 5], +[2, 4, 5], -[1, 2, 4, 5], +[3, 4, 5], -[1, 3, 4, 5], "
    "-[2, 3, 4, 5], +[1, 2, 3, 4, 5], -[3, r - 3, r - 2], -[2, r - 4, r - 3], "
    "-[1, r - 5, r - 4], +[r - 6, r - 5], +[r - 7, r - 5], +[r - 7, r - 3, r - 2], "
    "-[r - 7, r - 6, r - 5], +[r - 8, r - 5], -[r - 8, r - 7, r - 5], "
    "-[r - 8, r - 6, r - 5], +[r - 8, r - 7, r - 6, r - 5], -[r - 8, r - 7, r - 3, r - 2], "
    "+[r - 8, r - 4, r - 3], +[r - 8, r - 5, r - 3], +[r - 8, r - 5, r - 3, r - 2], "
    "-[r - 8, r - 5, r - 4, r - 3], +[r - 9, r - 5], -[r - 9, r - 8, r - 5], "
    "-[r - 9, r - 7, r - 5], +[r - 9, r - 8, r - 7, r - 5], -[r - 9, r - 6, r - 5], "
    "+[r - 9, r - 8, r - 6, r - 5], +[r - 9, r - 7, r - 6, r - 5], "
    "-[r - 9, r - 8, r - 7, r - 6, r - 5], -[r - 9, r - 7, r - 3, r - 2], "
    "-[r - 9, r - 8, r - 4, r - 3], +[r - 9, r - 5, r - 4], +[r - 9, r - 6, r - 4], "
    "+[r - 9, r - 6, r - 3, r - 2], -[r - 9, r - 6, r - 5, r - 4], +[r - 9, r - 7, r - 4], "
    "-[r - 9, r - 7, r - 6, r - 4], -[r - 9, r - 7, r - 5, r - 4], "
    "+[r - 9, r - 7, r - 6, r - 5, r - 4], -[r - 9, r - 7, r - 6, r - 3, r - 2], "
    "+[r - 9, r - 7, r - 4, r - 3], +[r - 9, r - 7, r - 5, r - 3], "
    "+[r - 9, r - 7, r - 5, r - 3, r - 2], -[r - 9, r - 7, r - 5, r - 4, r - 3]",
  };
  return r;
}

/// Term counts as stated alongside the table.
inline constexpr std::array<std::size_t, 5> stated_counts = {1, 3, 9, 24, 55};

/// Splits a row into its signed brackets, e.g. {"+[2]", "+[r - 3, r - 2]"}.
inline std::vector<std::string> split_row(const std::string& row) {
  std::vector<std::string> out;
  static const std::regex term(R"([+-]\[[^\]]*\])");
  for (auto it = std::sregex_iterator(row.begin(), row.end(), term); it != std::sregex_iterator(); ++it) {
    out.push_back(it->str());
  }
  return out;
}

}  // namespace flagalg::table1
