#include "tsfsb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "tsfsb/bench.hpp"
#include "tsfsb/csv_util.hpp"
#include "tsfsb/errors.hpp"
#include "tsfsb/feature_matrix.hpp"
#include "tsfsb/features.hpp"
#include "tsfsb/interchange.hpp"
#include "tsfsb/overlap.hpp"
#include "tsfsb/redundancy.hpp"
#include "tsfsb/svg.hpp"
#include "tsfsb/timeseries.hpp"

namespace fs = std::filesystem;

namespace tsfsb::cli {

std::uint64_t config_hash(const std::string& subcommand,
                          std::vector<std::pair<std::string, std::string>> params) {
  std::sort(params.begin(), params.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // field separator
    h *= 0x100000001b3ULL;
  };
  feed(subcommand);
  for (const auto& [k, v] : params) {
    feed(k);
    feed(v);
  }
  return h;
}

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  bool verbose = false;

  std::size_t workers() const {
    if (threads > 0) return threads;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
};

struct Context {
  const Globals& globals;
  std::ostream& out;
  std::ostream& err;
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;

  std::string hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(config_hash(subcommand, params)));
    return buf;
  }

  /// Provenance line written at the top of every CSV/text output.
  std::string provenance() const {
    return std::string("tsfsb ") + kToolVersion + " " + subcommand + " seed=" + std::to_string(globals.seed) +
           " config=" + hash_hex();
  }

  Provenance manifest_fields() const {
    return {{"seed", std::to_string(globals.seed)}, {"config_hash", hash_hex()}, {"subcommand", subcommand}};
  }

  void warn(const std::string& msg) const { err << "warning: " << msg << '\n'; }
  void info(const std::string& msg) const {
    if (globals.verbose) err << msg << '\n';
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : csv::split(s)) {
    auto t = std::string(csv::trim(part));
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::ofstream open_text(const fs::path& path, const Context& ctx) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "# " << ctx.provenance() << '\n';
  return out;
}

fs::path sibling(const fs::path& path, const std::string& suffix) {
  auto stem = path.stem().string();
  return path.parent_path() / (stem + suffix + path.extension().string());
}

std::string format_size(std::size_t v) { return std::to_string(v); }

// ---- subcommands ------------------------------------------------------------

struct CorpusArgs {
  std::size_t n = 0;
  std::size_t length = 1000;
  std::string out;
};

void cmd_corpus(const CorpusArgs& a, Context& ctx) {
  ctx.params = {{"n", format_size(a.n)}, {"length", format_size(a.length)}};
  const auto corpus = gen_diverse_corpus(a.n, ctx.globals.seed, a.length);
  write_corpus(corpus, a.out, {ctx.provenance()});
  ctx.info("wrote " + std::to_string(corpus.size()) + " series to " + a.out);
}

struct LoadArgs {
  std::string in;
  std::string out;
  std::size_t max_len = kDefaultMaxLength;
};

void cmd_load(const LoadArgs& a, Context& ctx) {
  ctx.params = {{"max_len", format_size(a.max_len)}};
  std::vector<std::string> warnings;
  const auto corpus = load_corpus(a.in, warnings, {a.max_len});
  for (const auto& w : warnings) ctx.warn(w);
  write_corpus(corpus, a.out, {ctx.provenance()});
  ctx.out << "loaded " << corpus.size() << " series, skipped " << warnings.size() << '\n';
}

struct FeaturesArgs {
  std::string set;
  std::size_t k_max = 100;
  std::string out;
};

void cmd_features(const FeaturesArgs& a, Context& ctx) {
  ctx.params = {{"set", a.set}, {"kmax", format_size(a.k_max)}};
  const auto cat = catalog(a.set, a.k_max);
  auto emit = [&](std::ostream& os) {
    os << "set_id,name,kind\n";
    for (const auto& d : cat) os << d.set_id << ',' << d.name << ',' << to_string(d.kind) << '\n';
  };
  if (a.out.empty()) {
    ctx.out << "# " << ctx.provenance() << '\n';
    emit(ctx.out);
  } else {
    auto os = open_text(a.out, ctx);
    emit(os);
  }
}

struct ExtractArgs {
  std::string set;
  std::string corpus;
  std::string out;
  std::size_t k_max = 0;
  std::size_t max_len = kDefaultMaxLength;
};

void cmd_extract(const ExtractArgs& a, Context& ctx) {
  ctx.params = {{"set", a.set}, {"kmax", format_size(a.k_max)}, {"max_len", format_size(a.max_len)}};
  std::vector<std::string> warnings;
  const auto corpus = load_corpus(a.corpus, warnings, {a.max_len});
  for (const auto& w : warnings) ctx.warn(w);
  ExtractParams params;
  if (a.k_max > 0) params.k_max = a.k_max;
  params.threads = ctx.globals.workers();
  const auto m = extract_set(a.set, corpus, params);
  write_interchange(m, a.out, ctx.manifest_fields());
  ctx.info("extracted " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()) + " (" + a.set + ")");
}

struct PipelineArgs {
  std::string matrices;
  double max_missing = kDefaultMaxMissing;
  std::string out;
};

void cmd_pipeline(const PipelineArgs& a, Context& ctx) {
  ctx.params = {{"max_missing", csv::format_double(a.max_missing)}};
  const auto paths = split_list(a.matrices);
  if (paths.empty()) throw ConfigError("pipeline: --matrices is empty");
  std::vector<FeatureMatrix> raw;
  for (const auto& p : paths) raw.push_back(read_interchange(p));
  const auto [filtered, report] = run_pipeline(raw, a.max_missing);

  const fs::path dir = a.out;
  fs::create_directories(dir);
  for (std::size_t i = 0; i < filtered.size(); ++i)
    write_interchange(filtered[i], dir / fs::path(paths[i]).filename(), ctx.manifest_fields());

  auto os = open_text(dir / "filter_report.csv", ctx);
  os << "record,set_id,item,value,detail\n";
  for (const auto& f : report.dropped_features)
    os << "dropped_feature," << f.set_id << ',' << f.name << ',' << csv::format_double(f.missing_fraction) << ",\n";
  for (const auto& s : report.dropped_series) {
    std::string sets;
    for (const auto& name : s.offending_sets) sets += (sets.empty() ? "" : ";") + name;
    os << "dropped_series,," << s.id << ',' << s.offending_features << ',' << sets << '\n';
  }
  for (const auto& shape : report.retained_shape)
    os << "retained_shape," << shape.set_id << ",," << shape.n_series << ',' << shape.n_features << '\n';
  ctx.out << "dropped " << report.dropped_features.size() << " features and " << report.dropped_series.size()
          << " series\n";
}

struct BenchArgs {
  std::string sets = "distilled-22,fft-raw";
  std::string lengths = "100,250,500,750,1000";
  std::size_t reps = 10;
  std::string generator = "gaussian";
  std::string out;
  std::string svg;
  std::size_t k_max = 0;
};

void cmd_bench(const BenchArgs& a, Context& ctx) {
  ctx.params = {{"sets", a.sets}, {"lengths", a.lengths}, {"reps", format_size(a.reps)},
                {"generator", a.generator}, {"kmax", format_size(a.k_max)}};
  BenchmarkPlan plan;
  plan.set_ids = split_list(a.sets);
  plan.lengths.clear();
  for (const auto& s : split_list(a.lengths)) {
    const auto v = csv::parse_double(s);
    if (!v || *v < 2 || *v != std::floor(*v)) throw ConfigError("bench: bad length '" + s + "'");
    plan.lengths.push_back(static_cast<std::size_t>(*v));
  }
  plan.repeats = a.reps;
  if (a.generator == "gaussian" || a.generator == "gaussian-noise") {
    plan.generator = BenchGenerator::GaussianNoise;
  } else if (a.generator == "sine" || a.generator == "noisy-sine") {
    plan.generator = BenchGenerator::NoisySine;
  } else {
    throw ConfigError("bench: unknown generator '" + a.generator + "'");
  }
  plan.seed = ctx.globals.seed;
  if (a.k_max > 0) plan.k_max = a.k_max;

  const auto result = run_benchmark(plan);
  write_bench_raw(result, a.out, {ctx.provenance()});
  write_bench_summary(result, sibling(a.out, ".summary"), {ctx.provenance()});
  if (!a.svg.empty()) svg::write(a.svg, svg::bench_plot(result));
  for (const auto& cell : result.cells) {
    const auto failed = std::count_if(cell.repeats.begin(), cell.repeats.end(), [](const auto& r) { return !r.ok; });
    if (failed > 0) ctx.warn(cell.set_id + " @ " + std::to_string(cell.length) + ": " + std::to_string(failed) +
                             " failed repeat(s)");
    if (!cell.benchable) ctx.warn(cell.set_id + " @ " + std::to_string(cell.length) + ": unbenchable");
  }
}

struct RedundancyArgs {
  std::string matrix;
  double threshold = 0.90;
  std::string out;
  std::string svg;
};

void cmd_redundancy(const RedundancyArgs& a, Context& ctx) {
  ctx.params = {{"threshold", csv::format_double(a.threshold)}};
  const auto m = read_interchange(a.matrix);
  const auto r = pca(m);
  const auto curve = cumvar_curve(r);
  const auto summary = pcs_for_threshold(r, a.threshold);
  auto os = open_text(a.out, ctx);
  os << "pc_fraction,cumvar\n";
  for (const auto& [frac, cum] : curve) os << csv::format_double(frac) << ',' << csv::format_double(cum) << '\n';
  if (!a.svg.empty()) svg::write(a.svg, svg::cumvar_plot({{r.set_id, curve}}, a.threshold));
  ctx.out << "set_id,k_star,total_components,proportion\n"
          << r.set_id << ',' << summary.k_star << ',' << summary.total_components << ','
          << csv::format_double(summary.proportion) << '\n';
}

struct OverlapArgs {
  std::string test;
  std::string benchmark;
  double cutoff = 0.2;
  std::string out;
};

void cmd_overlap(const OverlapArgs& a, Context& ctx) {
  ctx.params = {{"cutoff", csv::format_double(a.cutoff)}};
  const auto t = read_interchange(a.test);
  const auto b = read_interchange(a.benchmark);
  const auto r = overlap_S(t, b, ctx.globals.workers());
  for (const auto& w : r.warnings) ctx.warn(w);
  const auto low = least_matched(r, a.cutoff);
  auto os = open_text(a.out, ctx);
  os << "test_set,benchmark_set,feature,rho_max,best_match,below_cutoff\n";
  for (std::size_t i = 0; i < r.test_features.size(); ++i) {
    const auto j = r.best_match[i];
    const double v = r.rho_max(static_cast<Eigen::Index>(i));
    os << r.test_set << ',' << r.benchmark_set << ',' << r.test_features[i] << ',' << csv::format_double(v) << ','
       << (j >= 0 ? b.feature_names[static_cast<std::size_t>(j)] : std::string()) << ','
       << (v < a.cutoff ? 1 : 0) << '\n';
  }
  ctx.out << "test_set,benchmark_set,S,n_below_cutoff\n"
          << r.test_set << ',' << r.benchmark_set << ',' << csv::format_double(r.S) << ',' << low.size() << '\n';
}

struct OverlapAllArgs {
  std::string matrices;
  std::string out;
  std::string svg;
};

void cmd_overlap_all(const OverlapAllArgs& a, Context& ctx) {
  ctx.params = {};
  std::vector<FeatureMatrix> ms;
  for (const auto& p : split_list(a.matrices)) ms.push_back(read_interchange(p));
  const auto m = pairwise_overlap(ms, ctx.globals.workers());
  for (const auto& w : m.warnings) ctx.warn(w);
  auto os = open_text(a.out, ctx);
  os << "benchmark";
  for (const auto& id : m.set_ids) os << ',' << id;
  os << '\n';
  for (Eigen::Index b = 0; b < m.S.rows(); ++b) {
    os << m.set_ids[static_cast<std::size_t>(b)];
    for (Eigen::Index t = 0; t < m.S.cols(); ++t) os << ',' << csv::format_double(m.S(b, t));
    os << '\n';
  }
  if (!a.svg.empty()) svg::write(a.svg, svg::overlap_heatmap(m));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-series feature-set benchmarking toolkit", "tsfsb"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--threads", g.threads, "Worker threads for extraction and correlation (0 = all cores)");
  app.add_flag("--verbose,-v", g.verbose, "Progress messages on stderr");

  CorpusArgs corpus;
  auto* c_corpus = app.add_subcommand("corpus", "Generate a synthetic diverse corpus");
  c_corpus->add_option("--n", corpus.n, "Number of series")->required()->check(CLI::PositiveNumber);
  c_corpus->add_option("--length", corpus.length, "Samples per series")->check(CLI::Range(2, 1 << 30));
  c_corpus->add_option("--out", corpus.out, "Output directory")->required();

  LoadArgs load;
  auto* c_load = app.add_subcommand("load", "Ingest a directory of series files (truncating long series)");
  c_load->add_option("--in", load.in, "Input directory")->required();
  c_load->add_option("--out", load.out, "Output corpus directory")->required();
  c_load->add_option("--max-len", load.max_len, "Truncation length")->check(CLI::PositiveNumber);

  FeaturesArgs features;
  auto* c_features = app.add_subcommand("features", "Dump a feature catalog as CSV");
  c_features->add_option("--set", features.set, "Feature set id")->required();
  c_features->add_option("--kmax", features.k_max, "fft-raw coefficient count")->check(CLI::PositiveNumber);
  c_features->add_option("--out", features.out, "Output file (default stdout)");

  ExtractArgs extract;
  auto* c_extract = app.add_subcommand("extract", "Extract a built-in feature set over a corpus");
  c_extract->add_option("--set", extract.set, "Feature set id")->required();
  c_extract->add_option("--corpus", extract.corpus, "Corpus directory")->required();
  c_extract->add_option("--out", extract.out, "Interchange CSV")->required();
  c_extract->add_option("--kmax", extract.k_max, "fft-raw coefficient count");
  c_extract->add_option("--max-len", extract.max_len, "Truncation length")->check(CLI::PositiveNumber);

  PipelineArgs pipeline;
  auto* c_pipeline = app.add_subcommand("pipeline", "z-score, filter features, filter series");
  c_pipeline->add_option("--matrices", pipeline.matrices, "Comma-separated interchange CSVs")->required();
  c_pipeline->add_option("--max-missing", pipeline.max_missing, "Missing-fraction bound (strict)")
      ->check(CLI::Range(0.0, 1.0));
  c_pipeline->add_option("--out", pipeline.out, "Output directory")->required();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Time feature extraction across series lengths");
  c_bench->add_option("--sets", bench.sets, "Comma-separated set ids");
  c_bench->add_option("--lengths", bench.lengths, "Comma-separated lengths");
  c_bench->add_option("--reps", bench.reps, "Repeats per length")->check(CLI::PositiveNumber);
  c_bench->add_option("--generator", bench.generator, "gaussian | sine");
  c_bench->add_option("--out", bench.out, "Raw timing CSV")->required();
  c_bench->add_option("--svg", bench.svg, "Timing plot");
  c_bench->add_option("--kmax", bench.k_max, "fft-raw coefficient count");

  RedundancyArgs redundancy;
  auto* c_red = app.add_subcommand("redundancy", "PCA redundancy of one feature matrix");
  c_red->add_option("--matrix", redundancy.matrix, "Filtered interchange CSV")->required();
  c_red->add_option("--threshold", redundancy.threshold, "Cumulative variance threshold")
      ->check(CLI::Range(0.0, 1.0));
  c_red->add_option("--out", redundancy.out, "Curve CSV")->required();
  c_red->add_option("--svg", redundancy.svg, "Curve plot");

  OverlapArgs overlap;
  auto* c_overlap = app.add_subcommand("overlap", "Directed overlap S(T|B)");
  c_overlap->add_option("--test", overlap.test, "Test-set matrix")->required();
  c_overlap->add_option("--benchmark", overlap.benchmark, "Benchmark-set matrix")->required();
  c_overlap->add_option("--cutoff", overlap.cutoff, "Least-matched cutoff");
  c_overlap->add_option("--out", overlap.out, "Per-feature CSV")->required();

  OverlapAllArgs overlap_all;
  auto* c_all = app.add_subcommand("overlap-all", "S(T|B) for every ordered pair of sets");
  c_all->add_option("--matrices", overlap_all.matrices, "Comma-separated filtered matrices")->required();
  c_all->add_option("--out", overlap_all.out, "Matrix CSV")->required();
  c_all->add_option("--svg", overlap_all.svg, "Heatmap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  Context ctx{g, out, err, {}, {}};
  try {
    if (*c_corpus) {
      ctx.subcommand = "corpus";
      cmd_corpus(corpus, ctx);
    } else if (*c_load) {
      ctx.subcommand = "load";
      cmd_load(load, ctx);
    } else if (*c_features) {
      ctx.subcommand = "features";
      cmd_features(features, ctx);
    } else if (*c_extract) {
      ctx.subcommand = "extract";
      cmd_extract(extract, ctx);
    } else if (*c_pipeline) {
      ctx.subcommand = "pipeline";
      cmd_pipeline(pipeline, ctx);
    } else if (*c_bench) {
      ctx.subcommand = "bench";
      cmd_bench(bench, ctx);
    } else if (*c_red) {
      ctx.subcommand = "redundancy";
      cmd_redundancy(redundancy, ctx);
    } else if (*c_overlap) {
      ctx.subcommand = "overlap";
      cmd_overlap(overlap, ctx);
    } else if (*c_all) {
      ctx.subcommand = "overlap-all";
      cmd_overlap_all(overlap_all, ctx);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kOk;
}

}  // namespace tsfsb::cli
