#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "submod/codes.hpp"

namespace submod {

/// Matrix file: `ring:` line, `cols:` line, optional `ambient:` line, then rows.
struct MatrixFile {
  Matrix matrix;
  std::optional<Row> ambient_ideals;

  Ambient ambient() const;
  SubModule module() const;
};

MatrixFile parse_matrix_file(std::string_view text);
Matrix parse_matrix(std::string_view text);
SubModule parse_module(std::string_view text);

/// Splits a row on whitespace, keeping parenthesized tuples together.
std::vector<std::string> split_literals(std::string_view line);

std::string format_row(const Ring& r, std::span<const Elem> row);
std::string format_matrix(const Matrix& m);
/// Matrix format plus an `ambient:` line when the ambient is not R^n.
std::string format_module(const SubModule& m);

/// Code file: matrix-style header, then word blocks separated by `--` lines.
struct CodeFile {
  Ambient ambient;
  std::vector<SubModule> words;
};

CodeFile parse_code_file(std::string_view text);
Code parse_code(std::string_view text);
std::string format_code(const Code& c);

/// `key: value` lines; `#` starts a comment.
struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

class Config {
 public:
  static Config parse(std::string_view text);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::string& text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  std::uint64_t integer(const std::string& key) const;
  std::uint64_t integer_or(const std::string& key, std::uint64_t fallback) const;
  const std::map<std::string, ConfigEntry>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, ConfigEntry> entries_;
};

std::uint64_t parse_unsigned(std::string_view text, std::size_t line = 0, std::size_t column = 0);

}  // namespace submod
