#pragma once

#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace schatten::cli {

enum class Format { Jsonl, Csv };
Format parse_format(const std::string& text);

inline constexpr int kSchemaVersion = 1;
std::string build_id();

// Line-delimited records behind a self-describing header record.
// JSONL: one object per line. CSV: the header as a "# {json}" comment line, then a column row
// taken from the first record's keys; later records must carry the same keys.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format);
  void header(const nlohmann::ordered_json& config);
  void record(const nlohmann::ordered_json& rec);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

// Opens `path` for writing, or returns nullptr for "" / "-" (standard output).
std::unique_ptr<std::ofstream> open_output(const std::string& path);

}  // namespace schatten::cli
