#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rdi {

/// One model's row from a published robustness table.
struct RobustnessRecord {
  std::string dataset;
  std::string model;
  double accuracy = 0.0;
  std::map<std::string, double> asr_per_attack;
  double asr_avg = 0.0;
  double adv_accuracy_avg = 0.0;
  double roby = 0.0;
  double rdi = 0.0;
};

enum class Metric { rdi, roby };
enum class Target { adv_accuracy_avg, asr_avg };

Metric parse_metric(const std::string& name);
Target parse_target(const std::string& name);
std::string to_string(Metric m);
std::string to_string(Target t);

double metric_value(const RobustnessRecord& r, Metric m);
double target_value(const RobustnessRecord& r, Target t);

struct CorrelationReport {
  std::string dataset;
  std::string metric_name;
  std::string target_name;
  double spearman = 0.0;
  // Empty when either column has zero variance.
  std::optional<double> pearson;
  int n = 0;
};

struct FixtureEvaluation {
  std::vector<CorrelationReport> reports;
  std::vector<std::string> warnings;
};

/// Average ranks (1-based); tied values share the mean of the ranks they span.
std::vector<double> fractional_ranks(const std::vector<double>& values);

double spearman(const std::vector<double>& xs, const std::vector<double>& ys);
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Groups by dataset in order of first appearance. Groups with fewer than 3 records are skipped
/// and reported in `warnings`.
FixtureEvaluation evaluate_fixture(const std::vector<RobustnessRecord>& records, Metric metric,
                                   Target target);

/// Model names sorted ascending by `by`, ties broken by name.
std::vector<std::string> rank_models(const std::vector<RobustnessRecord>& records, Metric by);

std::vector<RobustnessRecord> load_fixture_csv(const std::filesystem::path& path);

}  // namespace rdi
