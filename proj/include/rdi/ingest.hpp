#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdi/analysis.hpp"
#include "rdi/feature_set.hpp"
#include "rdi/metric.hpp"

namespace rdi {

enum class FileFormat { npy, csv };

FileFormat parse_file_format(const std::string& name);

struct FeatureFilePair {
  std::filesystem::path features_path;
  std::filesystem::path labels_path;
  FileFormat format = FileFormat::npy;
};

/// Labels plus the class count they imply.
struct LabelSet {
  std::vector<int> labels;
  int inferred_classes = 0;
  std::vector<std::string> warnings;
};

/// Infers K as max label + 1 and warns about every class index with no samples.
LabelSet summarize_labels(std::vector<int> labels);

// NPY subset: v1.0/v2.0, C order, '<f4'/'<f8' matrices and '<i4'/'<i8' vectors.
RowMatrix<double> load_npy_matrix(const std::filesystem::path& path);
LabelSet load_npy_labels(const std::filesystem::path& path);

void write_npy_matrix(const std::filesystem::path& path, const RowMatrix<double>& m);
void write_npy_matrix(const std::filesystem::path& path, const RowMatrix<float>& m);
void write_npy_labels(const std::filesystem::path& path, const std::vector<int>& labels);

RowMatrix<double> load_csv_matrix(const std::filesystem::path& path);
LabelSet load_csv_labels(const std::filesystem::path& path);

struct LoadedFeatureSet {
  FeatureSet features;
  std::vector<std::string> warnings;
};

/// Loads a features/labels pair. K is max label + 1 unless `classes` is given, in which case
/// it must cover every label. The result is validated with a minimum of one class.
LoadedFeatureSet load_feature_set(const FeatureFilePair& files,
                                  std::optional<int> classes = std::nullopt);

FeatureSet load_csv(const std::filesystem::path& features_path,
                    const std::filesystem::path& labels_path);

/// Writes rows as comma-separated values with 17 significant digits, and labels one per line.
void write_csv(const std::filesystem::path& features_path,
               const std::filesystem::path& labels_path, const FeatureSet& fs);

inline constexpr const char* kReportSchema = "rdi-report/1";

nlohmann::json to_json(const RdiReport& report);
nlohmann::json to_json(const RobyReport& report);
nlohmann::json to_json(const CorrelationReport& report);
nlohmann::json to_json(const FixtureEvaluation& evaluation);

RdiReport rdi_report_from_json(const nlohmann::json& j);
RobyReport roby_report_from_json(const nlohmann::json& j);
FixtureEvaluation fixture_evaluation_from_json(const nlohmann::json& j);

std::string dump_report(const nlohmann::json& j);
void write_report_json(const nlohmann::json& report, const std::filesystem::path& path);

template <typename Report>
void write_report_json(const Report& report, const std::filesystem::path& path) {
  write_report_json(to_json(report), path);
}

nlohmann::json read_report_json(const std::filesystem::path& path);

}  // namespace rdi
