#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ivq::io {

/// Reads a whole file; throws ivq::Error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to `path`, creating parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Shortest round-trip decimal form of a double (std::to_chars), so emitted
/// CSV/JSON is byte-stable across runs. NaN renders as empty, infinities as
/// "inf"/"-inf".
std::string format_double(double v);

/// Minimal CSV emitter. Fields containing separators or quotes are quoted.
class CsvWriter {
 public:
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

std::string csv_escape(std::string_view field);

}  // namespace ivq::io
