//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>

namespace biocorpus {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

/// Whole file as bytes. Throws IoFailure.
std::string read_text_file(const std::string &path);

/// Writes bytes, replacing the file. "-" means stdout. Throws IoFailure.
void write_text_file(const std::string &path, std::string_view content);

/// Streams lines of a file (or stdin for "-") without loading it whole.
/// Strips a trailing '\r'.
class LineReader {
 public:
  /// Throws IoFailure when the file cannot be opened.
  explicit LineReader(const std::string &path);
  ~LineReader();
  LineReader(const LineReader &) = delete;
  LineReader &operator=(const LineReader &) = delete;

  bool next(std::string &line);
  /// 1-based number of the line last returned.
  std::size_t line_number() const noexcept { return line_number_; }
  const std::string &path() const noexcept { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ifstream> file_;
  std::istream *in_ = nullptr;
  std::size_t line_number_ = 0;
};

}  // namespace biocorpus
