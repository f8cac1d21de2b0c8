#include "rdi/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rdi/analysis.hpp"
#include "rdi/bench.hpp"
#include "rdi/ingest.hpp"
#include "rdi/metric.hpp"
#include "rdi/synth.hpp"

namespace rdi::cli {
namespace {

struct FileFlags {
  std::string features;
  std::string labels;
  std::string format = "npy";
  std::optional<int> classes;
  std::string out;
};

void add_file_flags(CLI::App* cmd, FileFlags& f) {
  cmd->add_option("--features", f.features, "N x D feature matrix file")->required();
  cmd->add_option("--labels", f.labels, "length-N predicted label file")->required();
  cmd->add_option("--format", f.format, "npy or csv")
      ->check(CLI::IsMember({"npy", "csv"}))
      ->capture_default_str();
  cmd->add_option("--classes", f.classes, "class count K (default: max label + 1)");
  cmd->add_option("--out", f.out, "write the JSON report here instead of stdout");
}

LoadedFeatureSet load(const FileFlags& f, std::ostream& err) {
  auto loaded = load_feature_set({f.features, f.labels, parse_file_format(f.format)}, f.classes);
  for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
  return loaded;
}

void emit(const nlohmann::json& report, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << dump_report(report);
  } else {
    write_report_json(report, path);
  }
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InvalidInput("bad entry '" + item + "' in class list");
    }
  }
  if (values.empty()) throw InvalidInput("class list is empty");
  return values;
}

int cmd_compute(const FileFlags& f, std::ostream& out, std::ostream& err) {
  const auto loaded = load(f, err);
  const auto report = compute_rdi(loaded.features);
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  emit(to_json(report), f.out, out);
  err << "RDI=" << fmt_double(report.rdi) << " IntraD=" << fmt_double(report.intra_d)
      << " InterD=" << fmt_double(report.inter_d) << " classes=" << report.effective_classes
      << " samples=" << report.num_samples << "\n";
  return kOk;
}

int cmd_roby(const FileFlags& f, std::ostream& out, std::ostream& err) {
  const auto loaded = load(f, err);
  const auto report = compute_roby(loaded.features);
  emit(to_json(report), f.out, out);
  err << "ROBY=" << fmt_double(report.roby) << " classes=" << report.classes.size()
      << " pairs=" << report.pairs.size() << " samples=" << loaded.features.size() << "\n";
  return kOk;
}

int cmd_synth(const MixtureSpec& spec, const std::string& prefix, std::ostream& out,
              std::ostream& err) {
  const auto fs = generate_mixture(spec);
  const std::string features = prefix + ".features.npy";
  const std::string labels = prefix + ".labels.npy";
  write_npy_matrix(features, fs.vectors);
  write_npy_labels(labels, fs.labels);
  const nlohmann::json echo = {{"classes", spec.num_classes},   {"dim", spec.dim},
                               {"per_class", spec.per_class},   {"separation", spec.separation},
                               {"spread", spec.spread},         {"seed", spec.seed},
                               {"features", features},          {"labels", labels}};
  out << echo.dump(2) << "\n";
  err << "wrote " << fs.size() << " x " << fs.dim() << " features to " << features << "\n";
  return kOk;
}

int cmd_correlate(const std::string& fixture, const std::string& metric,
                  const std::string& target, const std::string& out_path, std::ostream& out,
                  std::ostream& err) {
  const auto records = load_fixture_csv(fixture);
  const auto evaluation = evaluate_fixture(records, parse_metric(metric), parse_target(target));
  for (const auto& w : evaluation.warnings) err << "warning: " << w << "\n";
  err << std::left << std::setw(18) << "dataset" << std::setw(6) << "n" << std::setw(12)
      << "spearman" << "pearson\n";
  for (const auto& r : evaluation.reports) {
    err << std::left << std::setw(18) << r.dataset << std::setw(6) << r.n << std::setw(12)
        << std::fixed << std::setprecision(4) << r.spearman;
    if (r.pearson) {
      err << *r.pearson;
    } else {
      err << "n/a";
    }
    err << std::defaultfloat << "\n";
  }
  emit(to_json(evaluation), out_path, out);
  return kOk;
}

int cmd_bench(BenchConfig config, const std::string& classes_list, int per_class,
              std::optional<int> total, std::ostream& out, std::ostream& err) {
  config.classes = parse_int_list(classes_list);
  if (per_class < 1) throw InvalidInput("per-class must be >= 1");
  config.total_samples =
      total ? *total : per_class * *std::min_element(config.classes.begin(), config.classes.end());
  if (config.total_samples < 1) throw InvalidInput("total sample count must be >= 1");

  const auto rows = run_scaling_bench(config);
  nlohmann::json table = nlohmann::json::array();
  err << std::left << std::setw(8) << "K" << std::setw(11) << "per_class" << std::setw(12)
      << "rdi_ms" << std::setw(12) << "roby_ms" << "roby/rdi\n";
  for (const auto& r : rows) {
    err << std::left << std::setw(8) << r.num_classes << std::setw(11) << r.per_class
        << std::fixed << std::setprecision(3) << std::setw(12) << r.rdi_ms << std::setw(12)
        << r.roby_ms << std::setprecision(2) << r.ratio() << std::defaultfloat << "\n";
    table.push_back({{"classes", r.num_classes},
                     {"per_class", r.per_class},
                     {"rdi_ms", r.rdi_ms},
                     {"roby_ms", r.roby_ms},
                     {"roby_rdi_ratio", r.ratio()}});
  }
  out << nlohmann::json{{"schema", kReportSchema},
                        {"kind", "bench"},
                        {"dim", config.dim},
                        {"total_samples", config.total_samples},
                        {"repeats", config.repeats},
                        {"seed", config.seed},
                        {"rows", table}}
             .dump(2)
      << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RDI / ROBY robustness metrics from model feature vectors", "rdi"};
  app.require_subcommand(1);

  FileFlags compute_flags;
  auto* compute = app.add_subcommand("compute", "compute RDI for a features/labels pair");
  add_file_flags(compute, compute_flags);

  FileFlags roby_flags;
  auto* roby = app.add_subcommand("roby", "compute the ROBY baseline for a features/labels pair");
  add_file_flags(roby, roby_flags);

  MixtureSpec spec;
  std::string prefix;
  auto* synth = app.add_subcommand("synth", "write a seeded Gaussian-mixture NPY pair");
  synth->add_option("--classes", spec.num_classes)->required();
  synth->add_option("--dim", spec.dim)->required();
  synth->add_option("--per-class", spec.per_class)->required();
  synth->add_option("--separation", spec.separation)->required();
  synth->add_option("--spread", spec.spread)->required();
  synth->add_option("--seed", spec.seed)->required();
  synth->add_option("--out-prefix", prefix)->required();

  std::string fixture;
  std::string metric = "rdi";
  std::string target = "adv_acc";
  std::string correlate_out;
  auto* correlate = app.add_subcommand("correlate", "correlate a metric with fixture targets");
  correlate->add_option("--fixture", fixture, "robustness fixture CSV")->required();
  correlate->add_option("--metric", metric)->check(CLI::IsMember({"rdi", "roby"}));
  correlate->add_option("--target", target)->check(CLI::IsMember({"adv_acc", "asr"}));
  correlate->add_option("--out", correlate_out, "write the JSON report here instead of stdout");

  BenchConfig bench_config;
  std::string classes_list = "10,100,200";
  int per_class = 2000;
  std::optional<int> total;
  auto* bench = app.add_subcommand("bench", "time RDI and ROBY across class counts");
  bench->add_option("--classes-list", classes_list)->capture_default_str();
  bench->add_option("--dim", bench_config.dim)->capture_default_str();
  bench->add_option("--per-class", per_class,
                    "samples per class at the smallest K; the total is held fixed")
      ->capture_default_str();
  bench->add_option("--total", total, "total samples per K (overrides --per-class)");
  bench->add_option("--seed", bench_config.seed)->capture_default_str();
  bench->add_option("--repeats", bench_config.repeats)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (app.get_subcommands().empty()) err << app.help();
    return kValidationError;
  }

  try {
    if (compute->parsed()) return cmd_compute(compute_flags, out, err);
    if (roby->parsed()) return cmd_roby(roby_flags, out, err);
    if (synth->parsed()) return cmd_synth(spec, prefix, out, err);
    if (correlate->parsed()) {
      return cmd_correlate(fixture, metric, target, correlate_out, out, err);
    }
    if (bench->parsed()) return cmd_bench(bench_config, classes_list, per_class, total, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace rdi::cli
