#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "rdi/ingest.hpp"

namespace rdi {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_number(const std::string& cell, T& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
  throw FormatError(path.string() + ": line " + std::to_string(line) + ": " + what);
}

}  // namespace

FileFormat parse_file_format(const std::string& name) {
  if (name == "npy") return FileFormat::npy;
  if (name == "csv") return FileFormat::csv;
  throw InvalidInput("unknown file format '" + name + "' (expected npy or csv)");
}

LabelSet summarize_labels(std::vector<int> labels) {
  LabelSet out;
  out.labels = std::move(labels);
  if (out.labels.empty()) return out;
  out.inferred_classes = *std::max_element(out.labels.begin(), out.labels.end()) + 1;
  std::vector<bool> seen(static_cast<std::size_t>(out.inferred_classes), false);
  for (int l : out.labels) seen[static_cast<std::size_t>(l)] = true;
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) out.warnings.push_back("class " + std::to_string(k) + " is empty");
  }
  return out;
}

RowMatrix<double> load_csv_matrix(const std::filesystem::path& path) {
  auto in = open_text(path);
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  bool first_line = true;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (first_line) {
      first_line = false;
      double probe = 0.0;
      if (!parse_number(cells.front(), probe)) continue;  // header
    }
    if (cols == 0) cols = cells.size();
    if (cells.size() != cols) {
      line_error(path, lineno,
                 "expected " + std::to_string(cols) + " fields, got " +
                     std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!parse_number(cells[c], v)) {
        line_error(path, lineno, "cannot parse '" + cells[c] + "' in column " +
                                     std::to_string(c + 1));
      }
      if (!std::isfinite(v)) line_error(path, lineno, "non-finite value in column " +
                                                          std::to_string(c + 1));
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw InvalidInput(path.string() + ": no data rows");
  RowMatrix<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

LabelSet load_csv_labels(const std::filesystem::path& path) {
  auto in = open_text(path);
  std::vector<int> labels;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto cell = trim(line);
    if (cell.empty()) continue;
    long long v = 0;
    if (!parse_number(cell, v)) line_error(path, lineno, "cannot parse label '" + cell + "'");
    if (v < 0) line_error(path, lineno, "negative label " + cell);
    if (v > std::numeric_limits<int>::max() - 1) line_error(path, lineno, "label out of range");
    labels.push_back(static_cast<int>(v));
  }
  if (labels.empty()) throw InvalidInput(path.string() + ": no labels");
  return summarize_labels(std::move(labels));
}

LoadedFeatureSet load_feature_set(const FeatureFilePair& files, std::optional<int> classes) {
  LoadedFeatureSet out;
  LabelSet labels;
  if (files.format == FileFormat::npy) {
    out.features.vectors = load_npy_matrix(files.features_path);
    labels = load_npy_labels(files.labels_path);
  } else {
    out.features.vectors = load_csv_matrix(files.features_path);
    labels = load_csv_labels(files.labels_path);
  }
  if (static_cast<Eigen::Index>(labels.labels.size()) != out.features.vectors.rows()) {
    throw InvalidInput("row count mismatch: " + files.features_path.string() + " has " +
                       std::to_string(out.features.vectors.rows()) + " rows but " +
                       files.labels_path.string() + " has " +
                       std::to_string(labels.labels.size()) + " labels");
  }
  if (classes) {
    if (*classes < labels.inferred_classes) {
      throw InvalidInput("--classes " + std::to_string(*classes) +
                         " is smaller than max label + 1 = " +
                         std::to_string(labels.inferred_classes));
    }
    out.features.num_classes = *classes;
    for (int k = labels.inferred_classes; k < *classes; ++k) {
      labels.warnings.push_back("class " + std::to_string(k) + " is empty");
    }
  } else {
    out.features.num_classes = labels.inferred_classes;
  }
  out.features.labels = std::move(labels.labels);
  out.warnings = std::move(labels.warnings);
  out.features.validate(1);
  return out;
}

FeatureSet load_csv(const std::filesystem::path& features_path,
                    const std::filesystem::path& labels_path) {
  return load_feature_set({features_path, labels_path, FileFormat::csv}).features;
}

void write_csv(const std::filesystem::path& features_path,
               const std::filesystem::path& labels_path, const FeatureSet& fs) {
  std::ofstream f(features_path, std::ios::trunc);
  if (!f) throw IoError("cannot write " + features_path.string());
  char buf[32];
  for (Eigen::Index r = 0; r < fs.vectors.rows(); ++r) {
    for (Eigen::Index c = 0; c < fs.vectors.cols(); ++c) {
      if (c) f << ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, fs.vectors(r, c),
                                     std::chars_format::general, 17);
      f.write(buf, res.ptr - buf);
    }
    f << '\n';
  }
  std::ofstream l(labels_path, std::ios::trunc);
  if (!l) throw IoError("cannot write " + labels_path.string());
  for (int label : fs.labels) l << label << '\n';
  if (!f || !l) throw IoError("failed writing CSV pair");
}

}  // namespace rdi
