#include "output.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "schatten/errors.hpp"

#ifndef SCHATTEN_BUILD_ID
#define SCHATTEN_BUILD_ID "unknown"
#endif

namespace schatten::cli {

namespace {

// UTC timestamp; SOURCE_DATE_EPOCH pins it for reproducible files.
std::string timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(fixed));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_cell(const nlohmann::ordered_json& v) {
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_null()) s = "";
  else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "jsonl") return Format::Jsonl;
  if (text == "csv") return Format::Csv;
  throw SpecificationError("unknown format '" + text + "' (expected jsonl or csv)");
}

std::string build_id() { return SCHATTEN_BUILD_ID; }

RecordWriter::RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

void RecordWriter::header(const nlohmann::ordered_json& config) {
  nlohmann::ordered_json h;
  h["record"] = "header";
  h["schema_version"] = kSchemaVersion;
  h["config"] = config;
  h["build_id"] = build_id();
  h["created"] = timestamp();
  if (format_ == Format::Csv) out_ << "# ";
  out_ << h.dump() << '\n';
}

void RecordWriter::record(const nlohmann::ordered_json& rec) {
  if (format_ == Format::Jsonl) {
    out_ << rec.dump() << '\n';
    return;
  }
  if (columns_.empty()) {
    for (const auto& item : rec.items()) columns_.push_back(item.key());
    for (std::size_t k = 0; k < columns_.size(); ++k) out_ << (k ? "," : "") << columns_[k];
    out_ << '\n';
  }
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    const auto it = rec.find(columns_[k]);
    out_ << (k ? "," : "") << (it == rec.end() ? std::string() : csv_cell(*it));
  }
  out_ << '\n';
}

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;
  auto file = std::make_unique<std::ofstream>(path);
  if (!*file) throw SpecificationError("cannot open output file " + path);
  return file;
}

}  // namespace schatten::cli
