#include <fstream>

#include "rdi/ingest.hpp"

namespace rdi {
namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void expect_kind(const json& j, const char* kind) {
  if (!j.is_object() || j.value("schema", "") != kReportSchema) {
    throw FormatError(std::string("report is not ") + kReportSchema);
  }
  if (j.value("kind", "") != kind) {
    throw FormatError(std::string("expected a '") + kind + "' report, got '" +
                      j.value("kind", "") + "'");
  }
}

}  // namespace

json to_json(const RdiReport& report) {
  json per_class = json::array();
  for (const auto& s : report.per_class) {
    per_class.push_back({{"class_index", s.class_index},
                         {"count", s.count},
                         {"center", s.empty() ? json(nullptr) : vector_json(s.center)},
                         {"intra_distance", s.intra_distance}});
  }
  return {{"schema", kReportSchema},
          {"kind", "rdi"},
          {"rdi", report.rdi},
          {"intra_d", report.intra_d},
          {"inter_d", report.inter_d},
          {"global_center", vector_json(report.global_center)},
          {"effective_classes", report.effective_classes},
          {"num_samples", report.num_samples},
          {"per_class", per_class},
          {"warnings", report.warnings}};
}

json to_json(const RobyReport& report) {
  json pairs = json::array();
  for (const auto& p : report.pairs) pairs.push_back({p.first, p.second});
  return {{"schema", kReportSchema},
          {"kind", "roby"},
          {"roby", report.roby},
          {"classes", report.classes},
          {"fsa", report.fsa},
          {"pairs", pairs},
          {"fsd", report.fsd},
          {"pairwise_roby", report.pairwise_roby},
          {"normalized_pairwise_roby", report.normalized_pairwise_roby}};
}

json to_json(const CorrelationReport& report) {
  return {{"dataset", report.dataset},
          {"metric", report.metric_name},
          {"target", report.target_name},
          {"spearman", report.spearman},
          {"pearson", report.pearson ? json(*report.pearson) : json(nullptr)},
          {"n", report.n}};
}

json to_json(const FixtureEvaluation& evaluation) {
  json reports = json::array();
  for (const auto& r : evaluation.reports) reports.push_back(to_json(r));
  return {{"schema", kReportSchema},
          {"kind", "correlation"},
          {"reports", reports},
          {"warnings", evaluation.warnings}};
}

RdiReport rdi_report_from_json(const json& j) {
  expect_kind(j, "rdi");
  RdiReport r;
  r.rdi = j.at("rdi").get<double>();
  r.intra_d = j.at("intra_d").get<double>();
  r.inter_d = j.at("inter_d").get<double>();
  r.global_center = vector_from_json(j.at("global_center"));
  r.effective_classes = j.at("effective_classes").get<int>();
  r.num_samples = j.at("num_samples").get<Eigen::Index>();
  for (const auto& c : j.at("per_class")) {
    ClassStats s;
    s.class_index = c.at("class_index").get<int>();
    s.count = c.at("count").get<Eigen::Index>();
    if (!c.at("center").is_null()) s.center = vector_from_json(c.at("center"));
    s.intra_distance = c.at("intra_distance").get<double>();
    r.per_class.push_back(std::move(s));
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

RobyReport roby_report_from_json(const json& j) {
  expect_kind(j, "roby");
  RobyReport r;
  r.roby = j.at("roby").get<double>();
  r.classes = j.at("classes").get<std::vector<int>>();
  r.fsa = j.at("fsa").get<std::vector<double>>();
  for (const auto& p : j.at("pairs")) r.pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  r.fsd = j.at("fsd").get<std::vector<double>>();
  r.pairwise_roby = j.at("pairwise_roby").get<std::vector<double>>();
  r.normalized_pairwise_roby = j.at("normalized_pairwise_roby").get<std::vector<double>>();
  return r;
}

FixtureEvaluation fixture_evaluation_from_json(const json& j) {
  expect_kind(j, "correlation");
  FixtureEvaluation e;
  for (const auto& c : j.at("reports")) {
    CorrelationReport r;
    r.dataset = c.at("dataset").get<std::string>();
    r.metric_name = c.at("metric").get<std::string>();
    r.target_name = c.at("target").get<std::string>();
    r.spearman = c.at("spearman").get<double>();
    if (!c.at("pearson").is_null()) r.pearson = c.at("pearson").get<double>();
    r.n = c.at("n").get<int>();
    e.reports.push_back(std::move(r));
  }
  e.warnings = j.at("warnings").get<std::vector<std::string>>();
  return e;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

void write_report_json(const json& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << dump_report(report);
  if (!out) throw IoError("failed writing " + path.string());
}

json read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace rdi
