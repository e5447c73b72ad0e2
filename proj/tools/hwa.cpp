#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hwa/eval.hpp"
#include "hwa/pipeline.hpp"

namespace {

struct Options {
  std::string posts;
  std::string stopwords;
  std::string vectors;
  std::string gt;
  std::string out;
  std::string report;
  std::string word_freq_out;
  std::int64_t window_minutes = 720;
  double h = 30.0;
  double delta = 0.5;
  std::int64_t min_cluster_size = 5;
  std::int64_t top_k = 0;
  std::int64_t origin = 0;
  bool top_k_set = false;
  bool origin_set = false;
};

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

hwa::PipelineConfig to_config(const Options& o) {
  hwa::PipelineConfig config;
  config.window_minutes = o.window_minutes;
  config.h_percent = o.h;
  config.delta = o.delta;
  require(o.min_cluster_size >= 2, "min_cluster_size must be at least 2");
  config.min_cluster_size = static_cast<std::uint32_t>(o.min_cluster_size);
  if (o.top_k_set) {
    require(o.top_k >= 1, "top_k must be at least 1");
    config.top_k = static_cast<std::uint32_t>(o.top_k);
  }
  if (o.origin_set) config.origin = o.origin;
  return config;
}

hwa::EvalOptions to_eval_options(const Options& o) {
  hwa::EvalOptions eval_options;
  if (o.top_k_set) {
    require(o.top_k >= 1, "top_k must be at least 1");
    eval_options.top_k = static_cast<std::uint32_t>(o.top_k);
  }
  return eval_options;
}

struct Inputs {
  std::vector<hwa::RawPost> posts;
  hwa::StopwordSet stopwords;
  hwa::VectorStore vectors;
};

Inputs load_inputs(const Options& o) {
  Inputs inputs;
  auto read = hwa::read_posts_jsonl(o.posts);
  if (read.skipped_lines > 0) {
    std::cerr << "warning: skipped " << read.skipped_lines
              << " malformed post line(s) in " << o.posts << '\n';
  }
  inputs.posts = std::move(read.posts);
  if (!o.stopwords.empty()) inputs.stopwords = hwa::StopwordSet::load(o.stopwords);
  inputs.vectors = hwa::VectorStore::load(o.vectors);
  if (inputs.vectors.skipped_lines() > 0) {
    std::cerr << "warning: skipped " << inputs.vectors.skipped_lines()
              << " malformed vector row(s) in " << o.vectors << '\n';
  }
  return inputs;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

hwa::DetectResult detect(const Options& o) {
  const Inputs inputs = load_inputs(o);
  hwa::DetectResult result =
      hwa::run_detect(inputs.posts, inputs.stopwords, inputs.vectors, to_config(o));
  if (result.rejected_posts > 0) {
    std::cerr << "warning: dropped " << result.rejected_posts
              << " post(s) timestamped before the origin\n";
  }
  return result;
}

int cmd_detect(const Options& o) {
  require(!o.posts.empty(), "detect needs --posts");
  require(!o.vectors.empty(), "detect needs --vectors");
  const hwa::DetectResult result = detect(o);
  if (o.out.empty()) {
    hwa::write_topics_jsonl(std::cout, result.windows);
  } else {
    auto out = open_output(o.out);
    hwa::write_topics_jsonl(out, result.windows);
  }
  if (!o.word_freq_out.empty()) {
    auto out = open_output(o.word_freq_out);
    hwa::write_word_freq_jsonl(out, result);
  }
  return 0;
}

int cmd_evaluate(const Options& o) {
  require(!o.gt.empty(), "evaluate needs --gt");
  std::vector<hwa::WindowTopics> windows;
  if (!o.posts.empty()) {
    require(!o.vectors.empty(), "inline evaluation needs --vectors");
    hwa::DetectResult result = detect(o);
    if (!o.out.empty()) {
      auto out = open_output(o.out);
      hwa::write_topics_jsonl(out, result.windows);
    }
    windows = std::move(result.windows);
  } else {
    require(!o.out.empty(),
            "evaluate needs --posts for an inline run, or --out pointing at detect output");
    windows = hwa::read_topics_jsonl(o.out);
  }

  const hwa::GroundTruth truth = hwa::read_ground_truth(o.gt);
  const hwa::EvalReport report = hwa::evaluate_topics(windows, truth, to_eval_options(o));
  if (report.missing_windows > 0) {
    std::cerr << "warning: " << report.missing_windows
              << " ground truth window(s) had no emitted record; scored as empty\n";
  }
  const std::string json = hwa::report_to_json(report);
  if (o.report.empty()) {
    std::cout << json << '\n';
  } else {
    auto out = open_output(o.report);
    out << json << '\n';
  }
  return 0;
}

int cmd_tune(const Options& o) {
  require(!o.posts.empty(), "tune needs --posts");
  require(!o.vectors.empty(), "tune needs --vectors");
  require(!o.gt.empty(), "tune needs --gt");
  const Inputs inputs = load_inputs(o);
  const hwa::GroundTruth truth = hwa::read_ground_truth(o.gt);
  const auto rows =
      hwa::run_tune(inputs.posts, inputs.stopwords, inputs.vectors, truth, to_config(o),
                    hwa::default_h_grid(), hwa::default_delta_grid(), to_eval_options(o));
  if (o.out.empty()) {
    hwa::write_tune_csv(std::cout, rows);
  } else {
    auto out = open_output(o.out);
    hwa::write_tune_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Windowed topic detection for short social-media posts"};
  app.require_subcommand(1);
  // --h needs the short help flag's name.
  app.set_help_flag("--help", "Print help and exit");
  app.set_config("--config", "", "Read options from a key=value file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options o;
  app.add_option("--posts", o.posts,
                 "Posts JSONL, one {\"id\",\"text\",\"timestamp\"} object per line");
  app.add_option("--stopwords", o.stopwords, "Stopword list, one word per line");
  app.add_option("--vectors", o.vectors,
                 "Word vectors: 'count dim' header, then 'word f1 .. fD' rows");
  app.add_option("--gt", o.gt, "Ground truth JSON");
  app.add_option("--out", o.out,
                 "detect/tune output path; evaluate reads topics from it unless "
                 "--posts runs the pipeline inline (default: stdout)");
  app.add_option("--report", o.report, "Evaluation report JSON path (default: stdout)");
  app.add_option("--word-freq-out", o.word_freq_out,
                 "Per-topic word frequency JSONL path (detect only)");
  app.add_option("--window-minutes", o.window_minutes, "Window length in minutes")
      ->capture_default_str();
  app.add_option("--h", o.h, "Percent of the window vocabulary kept as keywords")
      ->capture_default_str();
  app.add_option("--delta", o.delta, "Damping factor of the backward co-occurrence term")
      ->capture_default_str();
  app.add_option("--min-cluster-size", o.min_cluster_size, "Smallest pattern cluster")
      ->capture_default_str();
  app.add_option("--top-k", o.top_k,
                 "Report at most k topics per window (default: every cluster)");
  app.add_option("--origin", o.origin,
                 "Epoch seconds anchoring window 0 (default: first post)");

  CLI::App* detect_cmd = app.add_subcommand(
      "detect", "Run the pipeline and emit one JSON topics record per window");
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Score emitted topics against ground truth");
  CLI::App* tune_cmd = app.add_subcommand(
      "tune", "Grid-search h and delta; CSV of h,delta,keyword-f1 per point");
  for (CLI::App* cmd : {detect_cmd, evaluate_cmd, tune_cmd}) {
    cmd->set_help_flag("--help", "Print help and exit");
    cmd->fallthrough();  // flags may follow the command name
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  o.top_k_set = app.count("--top-k") > 0;
  o.origin_set = app.count("--origin") > 0;

  try {
    if (detect_cmd->parsed()) return cmd_detect(o);
    if (evaluate_cmd->parsed()) return cmd_evaluate(o);
    return cmd_tune(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
