// Copyright 2026 The GCI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// gci: command-line front end for datasets, training, concept extraction and
// interpretation reports.
//
// Exit codes: 0 success, 1 usage, 2 data, 3 numeric, 4 repro check failed.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gci/common.hpp"
#include "gci/concepts.hpp"
#include "gci/dataset_io.hpp"
#include "gci/experiments.hpp"
#include "gci/gnn.hpp"
#include "gci/interpret.hpp"
#include "gci/metrics.hpp"
#include "gci/smiles.hpp"
#include "gci/synthgen.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace gci;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitChecks = 4;

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::kInvalidParams:
    case Errc::kInvalidTheta:
    case Errc::kKTooLarge:
      return kExitUsage;
    case Errc::kNonFinite:
    case Errc::kDegenerateDataset:
    case Errc::kDegenerateLabels:
    case Errc::kOneClassOnly:
      return kExitNumeric;
    default:
      return kExitData;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kFileNotFound, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kFileNotFound, "cannot write " + path);
  out << content;
}

// --out may name a file or a directory (existing, or written with a
// trailing slash); directories get the default file name.
std::string resolve_out(const std::string& out, const std::string& default_name) {
  if (!out.empty() && (out.back() == '/' || fs::is_directory(out))) return (fs::path(out) / default_name).string();
  return out;
}

/// Provenance record written next to every command's outputs.
class Manifest {
 public:
  Manifest(std::string command, const CLI::App& sub) : command_(std::move(command)) {
    for (const CLI::Option* opt : sub.get_options()) {
      if (opt->get_name() == "--help" || opt->count() == 0) continue;
      const auto& res = opt->results();
      std::string name = opt->get_name();
      while (!name.empty() && name.front() == '-') name.erase(name.begin());
      json v = res.size() == 1 ? json(res.front()) : json(res);
      if (name.find("seed") != std::string::npos) seeds_[name] = v;
      flags_[name] = std::move(v);
    }
    start_ = std::chrono::steady_clock::now();
  }

  void input(const std::string& path) { inputs_.push_back(entry(path)); }
  void output(const std::string& path) { outputs_.push_back(entry(path)); }

  void write(const std::string& path) const {
    json j;
    j["command"] = command_;
    j["flags"] = flags_;
    j["seeds"] = seeds_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_file(path, j.dump(2) + "\n");
  }

 private:
  static json entry(const std::string& path) {
    return {{"path", path}, {"fnv1a64", hex64(fnv1a64(read_file(path)))}};
  }

  std::string command_;
  json flags_ = json::object();
  json seeds_ = json::object();
  json inputs_ = json::array();
  json outputs_ = json::array();
  std::chrono::steady_clock::time_point start_;
};

std::optional<int> parse_class_filter(const std::string& s) {
  if (s == "all") return std::nullopt;
  if (s == "0" || s == "1") return std::stoi(s);
  throw Error(Errc::kInvalidParams, "--class-filter must be all, 0 or 1");
}

std::string class_filter_text(std::optional<int> c) { return c ? std::to_string(*c) : "all"; }

std::string resolve_spec(const std::string& spec) {
  if (fs::exists(spec)) return spec;
  for (const std::string& name : {spec, spec + ".gci"}) {
    const fs::path p = fs::path(GCI_DEFAULT_SPECS_DIR) / name;
    if (fs::exists(p)) return p.string();
  }
  throw Error(Errc::kFileNotFound, "interpretation spec " + spec);
}

gnn::FeatureEncoder encoder_for(const Dataset& ds) {
  if (ds.graphs.empty()) throw Error(Errc::kEmptyInput, "dataset has no graphs");
  return graph_kind(ds.graphs.front()) == GraphKind::kColor ? gnn::FeatureEncoder::color()
                                                               : gnn::FeatureEncoder::atom();
}

void fill_representatives(concepts::ConceptAssignment& a, const gnn::GcnModel& model, const Dataset& ds) {
  a.representatives = concepts::representatives(a, gnn::embed_all(model, ds, a.indices));
}

// ------------------------------------------------------------------ commands

struct SynthArgs {
  std::string recipe;
  std::size_t count = 1000;
  std::size_t nodes_min = 8;
  std::size_t nodes_max = 15;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthArgs& a, const CLI::App& sub) {
  Manifest man("synth", sub);
  const auto recipe = synth::parse_recipe(a.recipe);
  if (!recipe) throw Error(Errc::kInvalidParams, "unknown recipe " + a.recipe);
  synth::RecipeConfig cfg;
  cfg.count = a.count;
  cfg.nodes_min = a.nodes_min;
  cfg.nodes_max = a.nodes_max;
  cfg.seed = a.seed;
  const std::string out = resolve_out(a.out, "dataset.jsonl");
  write_file(out, dataset_to_string(synth::generate(*recipe, cfg)));
  man.output(out);
  man.write(out + ".manifest.json");
  std::cout << out << "\n";
  return 0;
}

struct IngestArgs {
  std::string csv;
  std::string out;
};

int cmd_ingest(const IngestArgs& a, const CLI::App& sub) {
  Manifest man("ingest-bbbp", sub);
  auto [ds, diag] = smiles::ingest_bbbp(a.csv);
  man.input(a.csv);
  const std::string out = resolve_out(a.out, "bbbp.jsonl");
  write_file(out, dataset_to_string(ds));
  man.output(out);
  man.write(out + ".manifest.json");
  std::cout << "parsed " << diag.parsed << " of " << diag.total_rows << " rows\n";
  for (const auto& s : diag.skipped) std::cerr << "skipped row " << s.row << ": " << s.reason << "\n";
  return 0;
}

struct TrainArgs {
  std::string data;
  std::string out;
  std::string preset = "auto";
  std::optional<int> epochs, layers, hidden;
  std::optional<double> lr, l2;
  std::optional<std::size_t> batch;
  std::uint64_t seed = 0;
};

int cmd_train(const TrainArgs& a, const CLI::App& sub) {
  Manifest man("train", sub);
  const Dataset ds = load_dataset(a.data);
  man.input(a.data);
  const gnn::FeatureEncoder enc = encoder_for(ds);
  const bool molecular = a.preset == "bbbp" || (a.preset == "auto" && enc.mode == gnn::EncoderMode::kAtomBasic);
  if (a.preset != "auto" && a.preset != "bbbp" && a.preset != "synthetic")
    throw Error(Errc::kInvalidParams, "--preset must be auto, synthetic or bbbp");
  gnn::TrainConfig cfg = molecular ? gnn::TrainConfig::bbbp() : gnn::TrainConfig::synthetic();
  gnn::ArchParams arch = molecular ? gnn::ArchParams{4, 64} : gnn::ArchParams{3, 16};
  if (a.epochs) cfg.epochs = *a.epochs;
  if (a.lr) cfg.learning_rate = *a.lr;
  if (a.l2) cfg.l2 = *a.l2;
  if (a.batch) cfg.batch_size = *a.batch;
  if (a.layers) arch.layers = *a.layers;
  if (a.hidden) arch.hidden = *a.hidden;
  cfg.seed = a.seed;
  const gnn::TrainResult tr = gnn::train(ds, enc, arch, cfg);
  const std::string out = resolve_out(a.out, "model.json");
  write_file(out, gnn::model_to_json(tr.model).dump() + "\n");
  man.output(out);
  man.write(out + ".manifest.json");
  if (!tr.history.empty()) {
    const auto& h = tr.history.back();
    const char* metric = ds.metric_kind == MetricKind::kAuroc ? "auroc" : "accuracy";
    std::cout << "epochs " << h.epoch << " train_loss " << metrics::fixed4(h.train_loss) << " train_" << metric << " "
              << metrics::fixed4(h.train_metric) << " test_" << metric << " " << metrics::fixed4(h.test_metric) << "\n";
  }
  std::cout << "fingerprint " << gnn::model_fingerprint(tr.model) << "\n";
  return 0;
}

struct ExtractArgs {
  std::string model;
  std::string data;
  int k = 0;
  std::string explainer = "gc";
  std::string class_filter = "all";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> base_seed;
  std::string out;
};

int cmd_extract(const ExtractArgs& a, const CLI::App& sub) {
  Manifest man("extract", sub);
  const gnn::GcnModel model = gnn::load_model(a.model);
  man.input(a.model);
  const Dataset ds = load_dataset(a.data);
  man.input(a.data);
  const auto filter = parse_class_filter(a.class_filter);
  concepts::ConceptAssignment result;
  const std::uint64_t base_seed = a.base_seed.value_or(a.seed);
  if (a.explainer == "gc") {
    result = concepts::gcexplainer_extract(model, ds, a.k, a.seed, filter);
  } else {
    const auto base = concepts::gcexplainer_extract(model, ds, a.k, base_seed, filter);
    if (a.explainer == "random") {
      result = concepts::random_extract(base, a.seed);
    } else if (a.explainer.rfind("noisy:", 0) == 0) {
      double theta = 0.0;
      try {
        theta = std::stod(a.explainer.substr(6));
      } catch (const std::exception&) {
        throw Error(Errc::kInvalidTheta, "cannot parse theta in " + a.explainer);
      }
      result = concepts::noisy_extract(base, theta, a.seed);
    } else {
      throw Error(Errc::kInvalidParams, "--explainer must be gc, noisy:THETA or random");
    }
  }
  fill_representatives(result, model, ds);
  const std::string out = resolve_out(a.out, "concepts.json");
  write_file(out, concepts::to_json(result).dump() + "\n");
  man.output(out);
  man.write(out + ".manifest.json");
  const auto sizes = result.concept_sizes();
  std::cout << "concept sizes";
  for (std::size_t s : sizes) std::cout << " " << s;
  std::cout << "\n";
  return 0;
}

void write_matrix(const std::string& dir, const std::string& stem, const metrics::IAMatrix& m, bool svg,
                  const std::string& title, Manifest* man, std::vector<std::string>* written = nullptr) {
  const std::string csv = (fs::path(dir) / (stem + ".csv")).string();
  write_file(csv, metrics::to_csv(m));
  if (man) man->output(csv);
  if (written) written->push_back(csv);
  if (svg) {
    const std::string path = (fs::path(dir) / (stem + ".svg")).string();
    write_file(path, metrics::to_svg(m, title));
    if (man) man->output(path);
    if (written) written->push_back(path);
  }
}

struct ReportArgs {
  std::string model, data, concepts, spec, out;
  std::optional<std::string> class_filter;
  bool svg = false;
  std::uint64_t seed = 0;
};

int cmd_report(const ReportArgs& a, const CLI::App& sub) {
  Manifest man("report", sub);
  const gnn::GcnModel model = gnn::load_model(a.model);
  man.input(a.model);
  const Dataset ds = load_dataset(a.data);
  man.input(a.data);
  const concepts::ConceptAssignment ca = concepts::load(a.concepts);
  man.input(a.concepts);
  const std::string spec_path = resolve_spec(a.spec);
  const interp::InterpretationSet hs = interp::load_spec(spec_path);
  man.input(spec_path);

  const std::string fp = gnn::model_fingerprint(model);
  if (fp != ca.provenance.model_fingerprint)
    throw Error(Errc::kFingerprintMismatch,
                "model " + fp + " but concepts were extracted from " + ca.provenance.model_fingerprint);
  if (a.class_filter && parse_class_filter(*a.class_filter) != ca.provenance.class_filter)
    throw Error(Errc::kInvalidParams, "--class-filter " + *a.class_filter + " does not match the concepts file (" +
                                          class_filter_text(ca.provenance.class_filter) + ")");

  const metrics::IAMatrix ia = metrics::ia_matrix(ca, hs, ds);
  const std::string title = "IA matrix (" + concepts::extractor_name(ca.provenance.kind) + ", k=" +
                            std::to_string(ca.k) + ", class " + class_filter_text(ca.provenance.class_filter) + ")";
  write_matrix(a.out, "ia", ia, a.svg, title, &man);

  metrics::SplitConfig sc;
  sc.seed = a.seed;
  std::ostringstream s;
  s << "extractor " << concepts::extractor_name(ca.provenance.kind) << "\n";
  s << "k " << ca.k << "\n";
  s << "class_filter " << class_filter_text(ca.provenance.class_filter) << "\n";
  s << "model_fingerprint " << fp << "\n";
  std::set<int> labels;
  for (const Graph& g : ds.graphs) labels.insert(g.label);
  if (labels.size() >= 2) {
    const auto comp = metrics::completeness(hs, ds, sc);
    s << "completeness " << (comp.metric_kind == MetricKind::kAuroc ? "auroc " : "accuracy ")
      << metrics::fixed4(comp.value) << " (held-out " << comp.test_size << " of " << comp.train_size + comp.test_size
      << ", split seed " << sc.seed << ", " << comp.classifier << ")\n";
  } else {
    s << "completeness undefined (single class)\n";
  }
  s << "predictability_f1\n";
  for (const auto& e : metrics::predictability(model, hs, ds, sc).entries)
    s << "  " << e.name << " " << (e.f1 ? metrics::fixed4(*e.f1) : std::string("undefined")) << " (prevalence "
      << metrics::fixed4(e.prevalence) << ")\n";
  s << "alignment\n";
  for (std::size_t r = 0; r < ia.rows(); ++r) s << "  " << ia.row_names[r] << " row_max " << metrics::fixed4(ia.row_max(r)) << "\n";
  for (std::size_t c = 0; c < ia.cols(); ++c) s << "  " << ia.column_names[c] << " column_max " << metrics::fixed4(ia.column_max(c)) << "\n";
  s << "mean_column_max " << metrics::fixed4(ia.mean_column_max()) << "\n";
  s << "concept_sizes";
  for (std::size_t n : ca.concept_sizes()) s << " " << n;
  s << "\nrepresentatives\n";
  for (std::size_t c = 0; c < ca.representatives.size(); ++c) {
    s << "  c" << c << ":";
    for (std::size_t i : ca.representatives[c]) s << " " << i;
    s << "\n";
  }
  const std::string summary = (fs::path(a.out) / "summary.txt").string();
  write_file(summary, s.str());
  man.output(summary);
  man.write((fs::path(a.out) / "report.manifest.json").string());
  std::cout << s.str();
  return 0;
}

struct SweepArgs {
  std::string model, data, spec, out;
  std::vector<int> ks;
  std::string class_filter = "all";
  std::uint64_t seed = 0;
  bool no_svg = false;
};

int cmd_sweep(const SweepArgs& a, const CLI::App& sub) {
  Manifest man("sweep", sub);
  const gnn::GcnModel model = gnn::load_model(a.model);
  man.input(a.model);
  const Dataset ds = load_dataset(a.data);
  man.input(a.data);
  const std::string spec_path = resolve_spec(a.spec);
  const interp::InterpretationSet hs = interp::load_spec(spec_path);
  man.input(spec_path);
  const auto filter = parse_class_filter(a.class_filter);
  std::vector<int> ks;
  for (int k : a.ks) {
    if (k < 2) throw Error(Errc::kInvalidParams, "k values must be at least 2");
    if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
  }
  json index = {{"class_filter", class_filter_text(filter)}, {"seed", a.seed},
                {"model_fingerprint", gnn::model_fingerprint(model)}, {"runs", json::array()}};
  for (int k : ks) {
    const auto ca = concepts::gcexplainer_extract(model, ds, k, a.seed, filter);
    const metrics::IAMatrix ia = metrics::ia_matrix(ca, hs, ds);
    const std::string stem = "ia_k" + std::to_string(k);
    std::vector<std::string> files;
    write_matrix(a.out, stem, ia, !a.no_svg,
                 "IA matrix (k=" + std::to_string(k) + ", class " + class_filter_text(filter) + ")", &man, &files);
    json row_max = json::object();
    for (std::size_t r = 0; r < ia.rows(); ++r) row_max[ia.row_names[r]] = ia.row_max(r);
    index["runs"].push_back({{"k", k}, {"files", files}, {"row_max", row_max},
                             {"mean_column_max", ia.mean_column_max()}});
    std::cout << "k=" << k << " mean_column_max " << metrics::fixed4(ia.mean_column_max()) << "\n";
  }
  const std::string index_path = (fs::path(a.out) / "sweep.json").string();
  write_file(index_path, index.dump(2) + "\n");
  man.output(index_path);
  man.write((fs::path(a.out) / "sweep.manifest.json").string());
  return 0;
}

struct ReproArgs {
  std::string experiment;
  std::optional<std::string> csv;
  std::optional<std::string> out;
  std::uint64_t seed = 0;
};

// checks.txt must be stable across reruns, so the measured runtime stays on
// stdout and in the manifest.
std::string stable_checks(exp::Report report) {
  for (auto& c : report.checks) {
    if (c.name != "runtime") continue;
    const auto pos = c.detail.find("(limit");
    if (pos != std::string::npos) c.detail = c.detail.substr(pos + 1, c.detail.size() - pos - 2);
  }
  return exp::format_checks(report);
}

int cmd_repro(const ReproArgs& a, const CLI::App& sub) {
  Manifest man("repro", sub);
  exp::Report report;
  if (a.experiment == "exp1" || a.experiment == "exp2" || a.experiment == "exp3") {
    exp::SyntheticOptions opt;
    opt.seed = a.seed;
    report = a.experiment == "exp1" ? exp::run_exp1(opt) : a.experiment == "exp2" ? exp::run_exp2(opt) : exp::run_exp3(opt);
  } else if (a.experiment == "bbbp") {
    if (!a.csv) throw Error(Errc::kInvalidParams, "repro bbbp needs --csv");
    man.input(*a.csv);
    auto [ds, diag] = smiles::ingest_bbbp(*a.csv);
    std::cout << "parsed " << diag.parsed << " of " << diag.total_rows << " rows\n";
    exp::BbbpOptions opt;
    opt.seed = a.seed;
    report = exp::run_bbbp(ds, opt);
  } else {
    throw Error(Errc::kInvalidParams, "experiment must be exp1, exp2, exp3 or bbbp");
  }
  for (const std::string& n : report.notes) std::cout << "note  " << report.experiment << ": " << n << "\n";
  std::cout << exp::format_checks(report);
  if (a.out) {
    for (const auto& nm : report.matrices) write_matrix(*a.out, nm.name, nm.matrix, true, nm.name, &man);
    const std::string checks = (fs::path(*a.out) / "checks.txt").string();
    write_file(checks, stable_checks(report));
    man.output(checks);
    man.write((fs::path(*a.out) / "repro.manifest.json").string());
  }
  return report.passed() ? 0 : kExitChecks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph concept interpretation: datasets, GCN training, concept extraction and IA reports"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic colored-graph dataset");
  synth->add_option("--recipe", synth_args.recipe, "colors3 | square-corr | independent")->required();
  synth->add_option("--count", synth_args.count, "Number of graphs");
  synth->add_option("--nodes-min", synth_args.nodes_min, "Minimum base-graph node count");
  synth->add_option("--nodes-max", synth_args.nodes_max, "Maximum base-graph node count");
  synth->add_option("--seed", synth_args.seed, "Random seed");
  synth->add_option("--out", synth_args.out, "Output dataset file or directory")->required();

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest-bbbp", "Convert a BBBP CSV into a molecular dataset");
  ingest->add_option("--csv", ingest_args.csv, "CSV with num,name,p_np,smiles columns")->required();
  ingest->add_option("--out", ingest_args.out, "Output dataset file or directory")->required();

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a GCN graph classifier");
  train->add_option("--data", train_args.data, "Dataset file")->required();
  train->add_option("--out", train_args.out, "Output model file or directory")->required();
  train->add_option("--preset", train_args.preset, "auto | synthetic | bbbp");
  train->add_option("--epochs", train_args.epochs);
  train->add_option("--lr", train_args.lr);
  train->add_option("--l2", train_args.l2);
  train->add_option("--batch", train_args.batch);
  train->add_option("--layers", train_args.layers);
  train->add_option("--hidden", train_args.hidden);
  train->add_option("--seed", train_args.seed);

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "Extract concepts from a trained model");
  extract->add_option("--model", extract_args.model)->required();
  extract->add_option("--data", extract_args.data)->required();
  extract->add_option("--k", extract_args.k, "Number of concepts")->required();
  extract->add_option("--explainer", extract_args.explainer, "gc | noisy:THETA | random");
  extract->add_option("--class-filter", extract_args.class_filter, "all | 0 | 1");
  extract->add_option("--seed", extract_args.seed, "Extractor seed");
  extract->add_option("--base-seed", extract_args.base_seed, "Clustering seed for noisy/random (default: --seed)");
  extract->add_option("--out", extract_args.out, "Output concepts file or directory")->required();

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Write the IA matrix and completeness/predictability summary");
  report->add_option("--model", report_args.model)->required();
  report->add_option("--data", report_args.data)->required();
  report->add_option("--concepts", report_args.concepts)->required();
  report->add_option("--spec", report_args.spec, "Interpretation spec file or bundled spec name")->required();
  report->add_option("--out", report_args.out, "Output directory")->required();
  report->add_option("--class-filter", report_args.class_filter, "Expected class filter of the concepts");
  report->add_flag("--svg", report_args.svg, "Also write ia.svg");
  report->add_option("--seed", report_args.seed, "Held-out split seed");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "IA matrices over several concept counts");
  sweep->add_option("--model", sweep_args.model)->required();
  sweep->add_option("--data", sweep_args.data)->required();
  sweep->add_option("--spec", sweep_args.spec)->required();
  sweep->add_option("--k", sweep_args.ks, "Concept counts")->required()->delimiter(',');
  sweep->add_option("--class-filter", sweep_args.class_filter, "all | 0 | 1");
  sweep->add_option("--seed", sweep_args.seed);
  sweep->add_flag("--no-svg", sweep_args.no_svg);
  sweep->add_option("--out", sweep_args.out, "Output directory")->required();

  ReproArgs repro_args;
  auto* repro = app.add_subcommand("repro", "Run a benchmark end to end and check its thresholds");
  repro->add_option("experiment", repro_args.experiment, "exp1 | exp2 | exp3 | bbbp")->required();
  repro->add_option("--csv", repro_args.csv, "BBBP CSV (bbbp only)");
  repro->add_option("--out", repro_args.out, "Directory for IA matrices and checks");
  repro->add_option("--seed", repro_args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(synth_args, *synth);
    if (*ingest) return cmd_ingest(ingest_args, *ingest);
    if (*train) return cmd_train(train_args, *train);
    if (*extract) return cmd_extract(extract_args, *extract);
    if (*report) return cmd_report(report_args, *report);
    if (*sweep) return cmd_sweep(sweep_args, *sweep);
    if (*repro) return cmd_repro(repro_args, *repro);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error: MalformedFile: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
