// crossum: cross-dataset evaluation of summarization systems.
//
// Data goes to files under --out; diagnostics go to stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "crossum/bias.hpp"
#include "crossum/config.hpp"
#include "crossum/corpus.hpp"
#include "crossum/crossgrid.hpp"
#include "crossum/error.hpp"
#include "crossum/factuality.hpp"
#include "crossum/parallel.hpp"
#include "crossum/report.hpp"
#include "crossum/rouge.hpp"
#include "crossum/stats.hpp"
#include "crossum/store.hpp"

namespace fs = std::filesystem;
using namespace crossum;

namespace {

struct Options {
  RunConfig config;
  std::string stemming = "on";
  std::string rouge_l = "auto";
  std::vector<std::string> datasets;
  std::string out_dir;
  unsigned jobs = 0;
  int precision = -1;
  int svg_precision = 2;
};

void info(const std::string& msg) { std::cerr << "crossum: " << msg << "\n"; }

// "name=path" or a bare path (dataset name = file stem).
std::pair<DatasetId, fs::path> dataset_arg(const std::string& arg) {
  if (auto eq = arg.find('='); eq != std::string::npos) return {DatasetId(arg.substr(0, eq)), arg.substr(eq + 1)};
  return {DatasetId(fs::path(arg).stem().string()), arg};
}

std::vector<DatasetId> dataset_order(const Options& o) {
  if (o.datasets.empty()) throw Error("--datasets is required: the matrix axis order must be explicit");
  std::vector<DatasetId> out;
  for (const auto& d : o.datasets) out.emplace_back(d);
  return out;
}

RunConfig resolve(Options& o) {
  if (o.stemming != "on" && o.stemming != "off") throw Error("--stemming takes on|off");
  o.config.stemming = o.stemming == "on";
  o.config.rouge_l = parse_rouge_l_mode(o.rouge_l);
  if (o.jobs == 0) o.jobs = std::max(1u, std::thread::hardware_concurrency());
  return o.config;
}

// Bare "novelty"/"repetition" pick up the configured n.
MetricId metric_arg(const std::string& name, const RunConfig& c) {
  if (name == "novelty") return MetricId(MetricKind::Novelty, c.novelty_n);
  if (name == "repetition") return MetricId(MetricKind::Repetition, c.repetition_n);
  return MetricId::parse(name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- profile

int run_profile(Options& o, const std::vector<std::string>& corpora) {
  const RunConfig c = resolve(o);
  std::vector<BiasProfile> profiles;
  for (const auto& arg : corpora) {
    auto [name, path] = dataset_arg(arg);
    const Corpus corpus = load_corpus(path, name);
    info("profiling " + name.str() + " (" + std::to_string(corpus.size()) + " samples)");
    profiles.push_back(profile_dataset(corpus, c.bias(), o.jobs));
  }
  const fs::path out(o.out_dir);
  write_file(out / "profiles.csv", profiles_csv(profiles));
  write_file(out / "profiles.json", profiles_json(profiles));
  return 0;
}

// ---------------------------------------------------------------- score

std::vector<ScoreRecord> bias_records(std::span<const SystemOutput* const> outputs, const Corpus& corpus,
                                      const std::vector<MetricId>& metrics, const RunConfig& c, unsigned jobs) {
  std::vector<SampleBias> measured(outputs.size());
  parallel_for(outputs.size(), jobs, [&](std::size_t i) {
    const Sample s = corpus.find(outputs[i]->sample_id)->truncated(c.max_doc_tokens);
    measured[i] = measure_bias(outputs[i]->summary, outputs[i]->sentences(), s.document, s.document_sentences(),
                               c.bias().fusion);
  });
  std::vector<ScoreRecord> out;
  for (const auto& m : metrics) {
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      const SampleBias& b = measured[i];
      std::optional<double> v;
      switch (m.kind()) {
        case MetricKind::Coverage: v = b.coverage; break;
        case MetricKind::CopyLength: v = b.copy_length; break;
        case MetricKind::Novelty: v = b.novelty[static_cast<std::size_t>(m.n() - 1)]; break;
        case MetricKind::Repetition: v = b.repetition[static_cast<std::size_t>(m.n() - 1)]; break;
        case MetricKind::Fusion: v = b.fusion; break;
        default: break;
      }
      if (v) out.push_back({outputs[i]->sample_id, outputs[i]->key, m, *v, 1.0, fingerprint(m, c)});
    }
  }
  return out;
}

int run_score(Options& o, const std::vector<std::string>& corpus_args, const std::vector<std::string>& output_files,
              const std::vector<std::string>& metric_names, const std::string& verdict_file,
              const std::string& store_dir) {
  const RunConfig c = resolve(o);
  std::vector<MetricId> metrics;
  for (const auto& m : metric_names) metrics.push_back(metric_arg(m, c));

  std::map<DatasetId, Corpus> corpora;
  for (const auto& arg : corpus_args) {
    auto [name, path] = dataset_arg(arg);
    if (corpora.contains(name)) throw Error("dataset " + name.str() + " given twice");
    corpora.emplace(name, load_corpus(path, name));
  }
  std::vector<SystemOutput> outputs;
  for (const auto& f : output_files) {
    auto part = load_outputs(f);
    outputs.insert(outputs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  {
    std::set<std::pair<OutputKey, std::string>> seen;
    for (const auto& out : outputs)
      if (!seen.emplace(out.key, out.sample_id).second)
        throw Error("duplicate output '" + out.sample_id + "' for " + out.key.describe());
  }
  if (const auto report = validate_alignment(corpora, outputs); !report.empty()) {
    std::cerr << report.describe();
    throw Error("outputs do not align with the corpora");
  }

  VerdictSet verdicts;
  const bool wants_factuality =
      std::any_of(metrics.begin(), metrics.end(), [](const MetricId& m) { return m.kind() == MetricKind::Factuality; });
  if (wants_factuality) {
    if (verdict_file.empty()) throw Error("metric factuality needs --verdicts");
    verdicts = load_verdicts(verdict_file);
    for (const auto& w : verdicts.warnings) info("warning: " + w);
    check_verdicts(verdicts, outputs);
  }

  ScoreStore store = ScoreStore::open(store_dir);
  std::map<OutputKey, std::vector<const SystemOutput*>> slices;
  for (const auto& out : outputs) slices[out.key].push_back(&out);

  std::vector<ScoreRecord> batch;
  std::size_t skipped = 0;
  for (const auto& [key, members] : slices) {
    std::vector<MetricId> needed;
    for (const auto& m : metrics) {
      if (store.has_cell(CellKey{key, m, fingerprint(m, c)}))
        ++skipped;
      else
        needed.push_back(m);
    }
    if (needed.empty()) continue;
    const Corpus& corpus = corpora.at(key.test_dataset);

    std::vector<MetricId> rouge, bias;
    bool factuality = false;
    for (const auto& m : needed) {
      if (m.kind() == MetricKind::Rouge1 || m.kind() == MetricKind::Rouge2 || m.kind() == MetricKind::RougeL)
        rouge.push_back(m);
      else if (m.kind() == MetricKind::Factuality)
        factuality = true;
      else
        bias.push_back(m);
    }

    if (!rouge.empty()) {
      std::vector<SystemOutput> slice_outputs;
      for (const auto* m : members) slice_outputs.push_back(*m);
      auto records = score_corpus(slice_outputs, corpus, c.rouge(), o.jobs);
      for (const auto& m : rouge)
        for (auto& r : records)
          if (r.metric == m) {
            r.fingerprint = fingerprint(m, c);
            batch.push_back(r);
          }
    }
    if (!bias.empty()) {
      auto records = bias_records(members, corpus, bias, c, o.jobs);
      batch.insert(batch.end(), records.begin(), records.end());
    }
    if (factuality) {
      const MetricId m(MetricKind::Factuality);
      for (auto& r : factuality_records(verdicts))
        if (r.key == key) {
          r.fingerprint = fingerprint(m, c);
          batch.push_back(r);
        }
    }
  }
  store.put_records(batch);
  info("stored " + std::to_string(batch.size()) + " records; " + std::to_string(skipped) +
       " cells already present");
  return 0;
}

// ---------------------------------------------------------------- matrix

struct MatrixSource {
  std::string store_dir;
  std::string csv;
};

std::pair<CrossMatrix, MatrixMeta> load_matrix(const Options& o, const RunConfig& c, const MatrixSource& src,
                                               const std::string& system, const std::string& metric_name) {
  if (!src.csv.empty()) {
    if (!src.store_dir.empty()) throw Error("give either a store or a matrix CSV, not both");
    return {read_matrix_csv(src.csv), MatrixMeta{system, metric_name, "as-read", "", false}};
  }
  if (src.store_dir.empty()) throw Error("a matrix source is required (--store or a matrix CSV)");
  const MetricId metric = metric_arg(metric_name, c);
  const std::string fp = fingerprint(metric, c);
  const ScoreStore store = ScoreStore::open(src.store_dir);
  return {build_matrix(store, SystemId(system), metric, fp, dataset_order(o)),
          MatrixMeta{system, metric.name(), std::string(aggregation_name(aggregation_for(metric))), fp, false}};
}

int run_matrix(Options& o, const MatrixSource& src, const std::string& system, const std::string& metric,
               bool normalized) {
  const RunConfig c = resolve(o);
  auto [u, meta] = load_matrix(o, c, src, system, metric);
  const fs::path out(o.out_dir);
  const std::string stem = sanitize_filename(system) + "_" + sanitize_filename(meta.metric);
  write_file(out / ("matrix_" + stem + ".csv"), matrix_csv(u, o.precision));
  write_file(out / ("matrix_" + stem + ".json"), matrix_json(u, meta));
  if (normalized) {
    const CrossMatrix n = normalize(u);
    MatrixMeta nmeta = meta;
    nmeta.normalized = true;
    write_file(out / ("matrix_" + stem + ".norm.csv"), matrix_csv(n, o.precision));
    write_file(out / ("matrix_" + stem + ".norm.json"), matrix_json(n, nmeta));
  }
  const Holistic h = holistic(u);
  write_file(out / ("holistic_" + stem + ".csv"), holistic_csv(system, meta.metric, h, o.precision));
  info(system + " " + meta.metric + ": stiffness " + format_number(h.stiffness, o.precision) + ", stableness " +
       format_number(h.stableness, o.precision));
  return 0;
}

// ---------------------------------------------------------------- compare

int run_compare(Options& o, const std::string& store_dir, const std::string& csv_a, const std::string& csv_b,
                const std::string& sys_a, const std::string& sys_b, const std::string& metric,
                const std::string& pairing_name) {
  const RunConfig c = resolve(o);
  const Pairing raw_pairing = parse_pairing(pairing_name);
  if (raw_pairing == Pairing::PerCellNormalized)
    throw Error("--pairing selects the raw pairing; the normalized comparison always runs per cell");
  auto [a, meta_a] = load_matrix(o, c, {store_dir, csv_a}, sys_a, metric);
  auto [b, meta_b] = load_matrix(o, c, {store_dir, csv_b}, sys_b, metric);

  const fs::path out(o.out_dir);
  const std::string stem = "diff_" + sanitize_filename(sys_a) + "_vs_" + sanitize_filename(sys_b);
  const CrossMatrix raw = diff(a, b, false);
  const CrossMatrix norm = diff(a, b, true);
  write_file(out / (stem + ".csv"), matrix_csv(raw, o.precision));
  write_file(out / (stem + ".svg"), heatmap_svg(raw, sys_a + " - " + sys_b + " (" + meta_a.metric + ")", o.svg_precision));
  write_file(out / (stem + ".norm.csv"), matrix_csv(norm, o.precision));
  write_file(out / (stem + ".norm.svg"),
             heatmap_svg(norm, sys_a + " - " + sys_b + " (" + meta_a.metric + ", normalized)", o.svg_precision));

  const std::vector<SignificanceRow> rows = {
      {sys_a, sys_b, meta_a.metric, std::string(pairing_name), compare_systems(a, b, raw_pairing, c.alpha)},
      {sys_a, sys_b, meta_a.metric, "per-cell-normalized", compare_systems(a, b, Pairing::PerCellNormalized, c.alpha)},
  };
  const fs::path sig = out / "significance.csv";
  write_file(sig, merge_significance(slurp(sig), rows));
  for (const auto& r : rows)
    info(r.measure + ": W=" + format_double(r.result.statistic) + " p=" + format_double(r.result.p_two_sided) +
         (r.result.significant ? " (significant)" : ""));
  return 0;
}

// ---------------------------------------------------------------- rank

int run_rank(Options& o, const std::string& store_dir, const std::vector<std::string>& matrix_args,
             std::vector<std::string> systems, const std::string& metric, const std::string& measure) {
  const RunConfig c = resolve(o);
  if (measure != "in-dataset" && measure != "stiffness" && measure != "stableness")
    throw Error("--measure takes in-dataset|stiffness|stableness");

  std::map<std::string, CrossMatrix> matrices;
  std::string metric_label = metric;
  if (!matrix_args.empty()) {
    if (!store_dir.empty()) throw Error("give either --store or --matrix files, not both");
    for (const auto& arg : matrix_args) {
      const auto eq = arg.find('=');
      const std::string name = eq == std::string::npos ? fs::path(arg).stem().string() : arg.substr(0, eq);
      matrices.emplace(name, read_matrix_csv(eq == std::string::npos ? arg : arg.substr(eq + 1)));
    }
  } else {
    if (store_dir.empty()) throw Error("rank needs --store or --matrix files");
    const MetricId m = metric_arg(metric, c);
    metric_label = m.name();
    const std::string fp = fingerprint(m, c);
    const ScoreStore store = ScoreStore::open(store_dir);
    if (systems.empty())
      for (const auto& s : store.systems(m, fp)) systems.push_back(s.str());
    if (systems.empty()) throw Error("no systems stored for " + m.name());
    for (const auto& s : systems) matrices.emplace(s, build_matrix(store, SystemId(s), m, fp, dataset_order(o)));
  }

  std::map<std::string, double> values;
  for (const auto& [name, u] : matrices)
    values[name] = measure == "in-dataset" ? in_dataset_mean(u) : measure == "stiffness" ? stiffness(u) : stableness(u);
  const auto ranking = rank_systems(values);
  const std::string label = sanitize_filename(metric_label) + "_" + measure;
  write_file(fs::path(o.out_dir) / ("ranking_" + label + ".csv"), ranking_csv(ranking, o.precision));
  return 0;
}

void add_config_options(CLI::App& app, Options& o) {
  app.add_option("--stemming", o.stemming, "Porter stemming for ROUGE (on|off)")->capture_default_str();
  app.add_option("--rouge-l", o.rouge_l, "ROUGE-L mode (auto|union|flat)")->capture_default_str();
  app.add_option("--novelty-n", o.config.novelty_n, "n-gram order for novelty")->check(CLI::Range(1, 4))->capture_default_str();
  app.add_option("--repetition-n", o.config.repetition_n, "n-gram order for repetition")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  app.add_option("--fusion-delta", o.config.fusion_delta, "minimum ROUGE-1 recall gain per fusion pick")
      ->capture_default_str();
  app.add_option("--fusion-max-support", o.config.fusion_max_support, "most document sentences per summary sentence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-doc-tokens", o.config.max_doc_tokens, "truncate documents to this many tokens (0 = full)")
      ->capture_default_str();
  app.add_option("--alpha", o.config.alpha, "significance level")->capture_default_str();
  app.add_option("--datasets", o.datasets, "dataset order of the matrix axes")->delimiter(',');
  app.add_option("--out", o.out_dir, "output directory (default $CROSSUM_OUT or .)");
  app.add_option("--jobs", o.jobs, "worker threads for per-sample work (0 = all cores)");
  app.add_option("--precision", o.precision, "decimals in CSV reports (-1 = full precision)")->capture_default_str();
  app.add_option("--svg-precision", o.svg_precision, "decimals in heatmap cells")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-dataset evaluation of summarization systems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "read options from a TOML/INI file");

  Options o;
  if (const char* env = std::getenv("CROSSUM_OUT")) o.out_dir = env;
  if (o.out_dir.empty()) o.out_dir = ".";
  add_config_options(app, o);

  auto* profile = app.add_subcommand("profile", "dataset bias profiles of reference summaries");
  std::vector<std::string> profile_corpora;
  profile->add_option("corpora", profile_corpora, "corpus files as name=path")->required();

  auto* score = app.add_subcommand("score", "score system outputs into a store");
  std::vector<std::string> corpus_args, output_files;
  std::vector<std::string> metric_names{"rouge1", "rouge2", "rougeL"};
  std::string verdict_file, store_dir;
  score->add_option("--corpus", corpus_args, "test corpora as name=path")->required();
  score->add_option("--outputs", output_files, "system output files")->required();
  score->add_option("--metrics", metric_names, "metrics to compute")->delimiter(',')->capture_default_str();
  score->add_option("--verdicts", verdict_file, "sentence verdicts for factuality");
  score->add_option("--store", store_dir, "score store directory")->required();

  auto* matrix = app.add_subcommand("matrix", "cross-dataset matrix and holistic measures");
  MatrixSource msrc;
  std::string m_system, m_metric;
  bool m_normalized = false;
  matrix->add_option("--store", msrc.store_dir, "score store directory");
  matrix->add_option("--from-csv", msrc.csv, "read the matrix from a matrix CSV instead");
  matrix->add_option("--system", m_system, "system name")->required();
  matrix->add_option("--metric", m_metric, "metric")->required();
  matrix->add_flag("--normalized", m_normalized, "also emit the diagonal-normalized matrix");

  auto* compare = app.add_subcommand("compare", "pairwise difference heatmaps and significance");
  std::string c_store, c_csv_a, c_csv_b, c_a, c_b, c_metric, c_pairing = "per-cell";
  compare->add_option("--store", c_store, "score store directory");
  compare->add_option("--csv-a", c_csv_a, "matrix CSV of system A");
  compare->add_option("--csv-b", c_csv_b, "matrix CSV of system B");
  compare->add_option("--system-a", c_a, "system A")->required();
  compare->add_option("--system-b", c_b, "system B")->required();
  compare->add_option("--metric", c_metric, "metric")->required();
  compare->add_option("--pairing", c_pairing, "raw pairing (per-cell|per-test-dataset)")->capture_default_str();

  auto* rank = app.add_subcommand("rank", "rank systems by a matrix measure");
  std::string r_store, r_metric, r_measure = "in-dataset";
  std::vector<std::string> r_matrices, r_systems;
  rank->add_option("--store", r_store, "score store directory");
  rank->add_option("--matrix", r_matrices, "matrix CSVs as system=path");
  rank->add_option("--systems", r_systems, "systems to rank (default: all in store)")->delimiter(',');
  rank->add_option("--metric", r_metric, "metric")->required();
  rank->add_option("--measure", r_measure, "in-dataset|stiffness|stableness")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*profile) return run_profile(o, profile_corpora);
    if (*score) return run_score(o, corpus_args, output_files, metric_names, verdict_file, store_dir);
    if (*matrix) return run_matrix(o, msrc, m_system, m_metric, m_normalized);
    if (*compare) return run_compare(o, c_store, c_csv_a, c_csv_b, c_a, c_b, c_metric, c_pairing);
    if (*rank) return run_rank(o, r_store, r_matrices, r_systems, r_metric, r_measure);
  } catch (const std::exception& e) {
    std::cerr << "crossum: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
