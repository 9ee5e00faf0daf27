#include "glfs/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "glfs/error.hpp"

namespace glfs::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  // Trailing blank lines carry no data.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(sep, start);
    fields.push_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

bool parse_double(std::string_view token, double& out) {
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

template <typename Int>
bool parse_int(std::string_view token, Int& out) {
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

DataMatrix parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) fail(ErrorCode::ParseError, "line 1: empty input");

  std::size_t first = 0;
  {
    double probe = 0.0;
    for (auto token : split_fields(lines[0], ',')) {
      if (!parse_double(token, probe)) {
        first = 1;
        break;
      }
    }
  }
  if (first >= lines.size()) fail(ErrorCode::ParseError, "line 2: no data rows after the header");

  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  for (std::size_t l = first; l < lines.size(); ++l) {
    const auto fields = split_fields(lines[l], ',');
    if (rows.empty()) {
      width = fields.size();
    } else if (fields.size() != width) {
      parse_fail(l + 1, "expected " + std::to_string(width) + " values, found " +
                            std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], row[c])) {
        parse_fail(l + 1, "not a number: '" + std::string(fields[c]) + "'");
      }
      if (!std::isfinite(row[c])) parse_fail(l + 1, "non-finite value");
    }
    rows.push_back(std::move(row));
  }

  Matrix values(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
  }
  if (values.cols() < 2) fail(ErrorCode::ParseError, "line 1: need at least two samples (columns)");
  return DataMatrix(std::move(values));
}

std::vector<int> parse_labels(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) fail(ErrorCode::ParseError, "line 1: empty label file");
  std::vector<std::string_view> tokens;
  bool all_int = true;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto token = trim(lines[l]);
    if (token.empty()) parse_fail(l + 1, "empty label");
    int v = 0;
    all_int = all_int && parse_int(token, v);
    tokens.push_back(token);
  }
  std::vector<int> out;
  out.reserve(tokens.size());
  if (all_int) {
    for (auto token : tokens) {
      int v = 0;
      parse_int(token, v);
      out.push_back(v);
    }
    return out;
  }
  std::map<std::string, int, std::less<>> ids;
  for (auto token : tokens) {
    auto it = ids.find(token);
    if (it == ids.end()) it = ids.emplace(std::string(token), static_cast<int>(ids.size())).first;
    out.push_back(it->second);
  }
  return out;
}

std::vector<Index> parse_indices(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<Index> out;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    Index v = 0;
    if (!parse_int(trim(lines[l]), v) || v < 0) parse_fail(l + 1, "expected a feature index");
    out.push_back(v);
  }
  return out;
}

std::vector<Index> parse_ranked_features(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<Index> out;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto fields = split_fields(lines[l], '\t');
    Index v = 0;
    if (fields.size() < 2 || !parse_int(fields[0], v) || v < 0) {
      parse_fail(l + 1, "expected 'feature_index<TAB>value'");
    }
    out.push_back(v);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DataMatrix load_matrix(const std::filesystem::path& path) { return parse_matrix(read_file(path)); }
std::vector<int> load_labels(const std::filesystem::path& path) {
  return parse_labels(read_file(path));
}
std::vector<Index> load_indices(const std::filesystem::path& path) {
  return parse_indices(read_file(path));
}
std::vector<Index> load_ranked_features(const std::filesystem::path& path) {
  return parse_ranked_features(read_file(path));
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_exact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string matrix_to_csv(const Matrix& values) {
  std::string out;
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_exact(values(r, c));
    }
    out += '\n';
  }
  return out;
}

OutputSet::~OutputSet() {
  std::error_code ec;
  for (const auto& s : staged_) std::filesystem::remove(s.temp, ec);
}

void OutputSet::write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path temp = path;
  temp += ".partial";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    require(static_cast<bool>(out), ErrorCode::IoError, "write failed for " + path.string());
  }
  staged_.push_back({path, std::move(temp)});
}

void OutputSet::commit() {
  for (const auto& s : staged_) {
    std::error_code ec;
    std::filesystem::rename(s.temp, s.target, ec);
    require(!ec, ErrorCode::IoError, "cannot move output into place: " + s.target.string());
  }
}

}  // namespace glfs::io
