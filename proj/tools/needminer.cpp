// Copyright 2026 The Needminer Authors.
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

// needminer: one subcommand per pipeline stage. Stages exchange files only.

#include <atomic>
#include <charconv>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "needminer/classify.hpp"
#include "needminer/config.hpp"
#include "needminer/corpus.hpp"
#include "needminer/error.hpp"
#include "needminer/evaluate.hpp"
#include "needminer/filtering.hpp"
#include "needminer/io.hpp"
#include "needminer/label_service.hpp"
#include "needminer/labeling.hpp"
#include "needminer/rng.hpp"
#include "needminer/sampling.hpp"
#include "needminer/synthetic.hpp"
#include "needminer/textproc.hpp"

namespace fs = std::filesystem;
using namespace needminer;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "needminer 1.0.0";

struct Options {
  std::optional<std::string> config_flag;
  std::string format = "table";

  std::string ingest_file;
  int port = -1;
  std::string ui_dir;

  std::string algo;
  std::string sampling;
  std::uint64_t seed = 0;
  std::string out;

  bool grid = false;
  int jobs = 1;
  std::string manifest_dir;

  std::string input;
  std::string objective;

  std::string model;
  std::string predict_file;

  std::string demo_out;
  std::uint64_t demo_seed = 7;
  std::size_t demo_documents = 200;
};

config::RunConfig load_config(const Options& o) {
  std::optional<fs::path> flag;
  if (o.config_flag) flag = *o.config_flag;
  return config::load(config::locate(flag));
}

std::string number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void print_json(const json& j) { std::cout << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n'; }

int cmd_ingest(const Options& o) {
  const auto cfg = load_config(o);
  const auto keywords = corpus::KeywordSet::load(cfg.paths.keywords);
  corpus::CorpusStore store(cfg.paths.corpus);
  const auto r = corpus::ingest(o.ingest_file, keywords, store);
  if (o.format == "records") {
    print_json({{"read", r.read}, {"matched", r.matched}, {"duplicates", r.duplicates},
                {"non_matching", r.non_matching}, {"rejected", r.rejected}, {"stored", store.size()}});
  } else {
    std::cout << "read\t" << r.read << "\nmatched\t" << r.matched << "\nduplicates\t"
              << r.duplicates << "\nnon_matching\t" << r.non_matching << "\nrejected\t"
              << r.rejected << "\nstored\t" << store.size() << '\n';
  }
  return 0;
}

int cmd_filter(const Options& o) {
  const auto cfg = load_config(o);
  const auto records = corpus::read_records(cfg.paths.corpus);
  const auto result = filtering::run_filters(records);
  corpus::write_records(cfg.paths.filtered, result.retained);
  const auto& r = result.report;
  if (o.format == "records") {
    print_json({{"input", r.input_count}, {"after_language", r.after_language},
                {"after_url", r.after_url}, {"after_dedup", r.after_dedup}});
  } else {
    std::cout << "input\t" << r.input_count << "\nafter_language\t" << r.after_language
              << "\nafter_url\t" << r.after_url << "\nafter_dedup\t" << r.after_dedup << '\n';
  }
  return 0;
}

std::vector<labeling::LabelItem> label_items(const config::RunConfig& cfg) {
  std::vector<labeling::LabelItem> items;
  for (auto& r : corpus::read_records(cfg.paths.filtered)) {
    items.push_back({std::move(r.id), std::move(r.text)});
  }
  return items;
}

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

int cmd_label_serve(const Options& o) {
  const auto cfg = load_config(o);
  labeling::LabelSession session(label_items(cfg), cfg.paths.votes, cfg.votes_per_item);
  labeling::LabelService service(session);
  const fs::path ui = o.ui_dir.empty() ? cfg.paths.ui : fs::path(o.ui_dir);
  if (!ui.empty() && !service.mount_ui(ui)) {
    throw Error(ErrorCode::kInvalidConfig, "ui directory not found: " + ui.string());
  }
  const int port = o.port >= 0 ? o.port : cfg.port;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::jthread watcher([&service](std::stop_token stop) {
    while (!stop.stop_requested() && !g_interrupted) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    service.stop();
  });
  std::cerr << "serving " << session.progress().items_total << " items on " << cfg.host << ':'
            << port << '\n';
  const bool ok = service.listen(cfg.host, port);
  watcher.request_stop();
  if (!ok && !g_interrupted) {
    throw Error(ErrorCode::kIoError, "cannot bind " + cfg.host + ":" + std::to_string(port));
  }
  return 0;
}

int cmd_label_export(const Options& o) {
  const auto cfg = load_config(o);
  labeling::LabelSession session(label_items(cfg), cfg.paths.votes, cfg.votes_per_item);
  const auto labels = session.export_labels();
  labeling::write_export(cfg.paths.labels, labels);
  std::size_t counts[4] = {};
  for (const auto& l : labels) ++counts[static_cast<int>(l.verdict)];
  const auto p = session.progress();
  if (o.format == "records") {
    print_json({{"items", p.items_total}, {"completed", p.completed}, {"need", counts[0]},
                {"no_need", counts[1]}, {"suspend", counts[2]}});
  } else {
    std::cout << "items\t" << p.items_total << "\ncompleted\t" << p.completed << "\nneed\t"
              << counts[0] << "\nno_need\t" << counts[1] << "\nsuspend\t" << counts[2] << '\n';
  }
  return 0;
}

int cmd_dataset_build(const Options& o) {
  const auto cfg = load_config(o);
  const auto items = labeling::read_export(cfg.paths.labels);
  const auto dataset = sampling::build_dataset(items, cfg.preprocess());
  sampling::write_dataset(cfg.paths.dataset, dataset);
  const auto need = dataset.count(sampling::Label::kNeed);
  const auto no_need = dataset.count(sampling::Label::kNoNeed);
  if (o.format == "records") {
    print_json({{"documents", dataset.size()}, {"need", need}, {"no_need", no_need}});
  } else {
    std::cout << "documents\t" << dataset.size() << "\nneed\t" << need << "\nno_need\t" << no_need
              << '\n';
  }
  return 0;
}

int cmd_train(const Options& o) {
  const auto cfg = load_config(o);
  const auto dataset = sampling::read_dataset(cfg.paths.dataset);
  const auto algorithm = classify::parse_algorithm(o.algo);
  const auto strategy = o.sampling.empty() ? cfg.default_strategy : sampling::parse_strategy(o.sampling);
  auto spec = cfg.classifier(algorithm);
  spec.seed = o.seed;

  const auto plan = sampling::training_only(dataset);
  auto split = sampling::materialize(dataset, plan);
  const auto balanced = sampling::balance(strategy, split.minority_train, split.majority_train,
                                          derive_seed(o.seed, "balance", 0),
                                          cfg.protocol.smote_neighbors);
  for (const auto& w : balanced.warnings) std::cerr << "warning: " << w << '\n';
  const auto model = classify::fit(spec, balanced.training, split.vocabulary);

  fs::path out = o.out;
  if (out.empty()) {
    fs::create_directories(cfg.paths.models);
    out = cfg.paths.models / (std::string(sampling::to_string(strategy)) + "_" +
                              std::string(classify::to_string(algorithm)) + ".model");
  }
  classify::save_model(model, out);
  std::cout << out.string() << '\n';
  return 0;
}

void write_results(const config::RunConfig& cfg, std::span<const evaluate::LeaderboardRow> rows) {
  io::write_text(cfg.paths.results, evaluate::format_records(rows));
}

void print_rows(const Options& o, std::span<const evaluate::LeaderboardRow> rows) {
  std::cout << (o.format == "records" ? evaluate::format_records(rows)
                                      : evaluate::format_table(rows));
}

int cmd_evaluate(const Options& o) {
  const auto cfg = load_config(o);
  const auto dataset = sampling::read_dataset(cfg.paths.dataset);
  std::vector<sampling::Strategy> strategies;
  std::vector<classify::ClassifierSpec> specs;
  if (o.grid) {
    strategies = cfg.strategies;
    specs = cfg.classifiers;
  } else {
    if (o.algo.empty()) throw CLI::RequiredError("--algo (or --grid)");
    strategies.push_back(o.sampling.empty() ? cfg.default_strategy : sampling::parse_strategy(o.sampling));
    specs.push_back(cfg.classifier(classify::parse_algorithm(o.algo)));
  }

  std::vector<evaluate::LeaderboardRow> rows;
  if (!o.manifest_dir.empty()) {
    fs::create_directories(o.manifest_dir);
    for (auto strategy : strategies) {
      for (const auto& spec : specs) {
        const auto cell = evaluate::cell_name(strategy, spec.algorithm);
        auto observer = [&](int r, const sampling::SplitPlan& plan, const sampling::MaterializedSplit&) {
          auto file = cell;
          std::replace(file.begin(), file.end(), '/', '_');
          io::write_text(fs::path(o.manifest_dir) / (file + "_" + std::to_string(r) + ".tsv"),
                         sampling::format_manifest(plan, dataset));
        };
        rows.push_back({std::string(sampling::to_string(strategy)),
                        std::string(classify::to_string(spec.algorithm)),
                        evaluate::evaluate_cell(dataset, strategy, spec, cfg.protocol, observer)});
      }
    }
    evaluate::sort_rows(rows);
  } else {
    rows = evaluate::leaderboard(dataset, strategies, specs, cfg.protocol, o.jobs);
  }
  for (const auto& row : rows) {
    for (const auto& w : row.report.warnings) std::cerr << "warning: " << row.name() << ": " << w << '\n';
  }
  write_results(cfg, rows);
  print_rows(o, rows);
  return 0;
}

std::vector<evaluate::LeaderboardRow> load_rows(const Options& o) {
  fs::path input = o.input;
  if (input.empty()) input = load_config(o).paths.results;
  if (input.extension() == ".tsv") return evaluate::load_results_table(input);
  return evaluate::parse_records(io::read_text(input));
}

int cmd_leaderboard(const Options& o) {
  auto rows = load_rows(o);
  evaluate::sort_rows(rows);
  print_rows(o, rows);
  return 0;
}

int cmd_recommend(const Options& o) {
  const auto objective = evaluate::parse_objective(o.objective);
  const auto rows = load_rows(o);
  const auto rec = evaluate::recommend(rows, objective);
  if (o.format == "records") {
    print_json({{"objective", std::string(evaluate::to_string(objective))},
                {"sampling", rec.row.sampling},
                {"algorithm", rec.row.algorithm},
                {"value", rec.value},
                {"rationale", rec.rationale}});
  } else {
    char value[32];
    std::snprintf(value, sizeof value, "%.3f", rec.value);
    std::cout << rec.row.sampling << '+' << rec.row.algorithm << '\t'
              << evaluate::to_string(objective) << '\t' << value << '\n'
              << rec.rationale << '\n';
  }
  return 0;
}

int cmd_predict(const Options& o) {
  const auto cfg = load_config(o);
  const auto model = classify::load_model(o.model);
  const auto pre = cfg.preprocess();
  const auto records = corpus::read_records(o.predict_file);
  std::string out;
  for (const auto& r : records) {
    const auto tokens = textproc::preprocess(r.text, pre);
    const double s = classify::score(model, textproc::vectorize(tokens, model.vocabulary));
    const std::string verdict(sampling::to_string(classify::label_for_score(s)));
    if (o.format == "records") {
      out += json{{"id", r.id}, {"score", s}, {"verdict", verdict}}.dump() + '\n';
    } else {
      out += r.id + '\t' + number(s) + '\t' + verdict + '\n';
    }
  }
  std::cout << out;
  return 0;
}

int cmd_demo_data(const Options& o) {
  synthetic::Options opt;
  opt.seed = o.demo_seed;
  opt.documents = o.demo_documents;
  const auto demo = synthetic::separable_corpus(opt);
  const fs::path dir = o.demo_out;
  fs::create_directories(dir);
  corpus::write_records(dir / "tweets.jsonl", demo.records);
  std::string votes;
  for (const auto& v : demo.votes) votes += labeling::format_vote(v) + '\n';
  io::write_text(dir / "votes.jsonl", votes);
  std::cout << "records\t" << demo.records.size() << "\nvotes\t" << demo.votes.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Need mining pipeline for German e-mobility tweets", "needminer"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_flag,
                 "Config file (default: $NEEDMINER_CONFIG, then ./needminer.ini)");

  auto sub = [&](CLI::App* parent, const char* name, const char* help) {
    auto* s = parent->add_subcommand(name, help);
    s->set_version_flag("--version", kVersion);
    return s;
  };
  auto format_flag = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "records"}))
        ->capture_default_str();
  };
  int (*handler)(const Options&) = nullptr;

  auto* ingest = sub(&app, "ingest", "Append keyword-matching records from a JSON-lines file");
  ingest->add_option("file", o.ingest_file, "Input records")->required()->check(CLI::ExistingFile);
  format_flag(ingest);
  ingest->callback([&] { handler = cmd_ingest; });

  auto* filter = sub(&app, "filter", "Language, URL and duplicate filtering of the corpus");
  format_flag(filter);
  filter->callback([&] { handler = cmd_filter; });

  auto* label = sub(&app, "label", "Crowd-labeling service and label export");
  label->require_subcommand(1);
  auto* serve = sub(label, "serve", "Run the labeling HTTP service until interrupted");
  serve->add_option("--port", o.port, "Port (default from config)")->check(CLI::Range(0, 65535));
  serve->add_option("--ui", o.ui_dir, "Static labeling UI directory served under /ui");
  serve->callback([&] { handler = cmd_label_serve; });
  auto* exp = sub(label, "export", "Write aggregated labels of completed items");
  format_flag(exp);
  exp->callback([&] { handler = cmd_label_export; });

  auto* dataset = sub(&app, "dataset", "Labeled dataset construction");
  dataset->require_subcommand(1);
  auto* build = sub(dataset, "build", "Preprocess labeled items into a dataset");
  format_flag(build);
  build->callback([&] { handler = cmd_dataset_build; });

  auto* train = sub(&app, "train", "Fit one classifier on the whole dataset");
  train->add_option("--algo", o.algo, "naive_bayes, spegasos, random_tree, random_forest")->required();
  train->add_option("--sampling", o.sampling, "none, undersampling, oversampling, smote");
  train->add_option("--seed", o.seed, "Classifier and balancing seed")->required();
  train->add_option("--out", o.out, "Model file (default: <models>/<sampling>_<algo>.model)");
  train->callback([&] { handler = cmd_train; });

  auto* evaluate = sub(&app, "evaluate", "Repeated-holdout evaluation of one cell or the grid");
  evaluate->add_flag("--grid", o.grid, "Every configured sampling x algorithm cell");
  evaluate->add_option("--algo", o.algo, "Single cell algorithm");
  evaluate->add_option("--sampling", o.sampling, "Single cell sampling strategy");
  evaluate->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  evaluate->add_option("--manifest", o.manifest_dir, "Write per-repetition split manifests here");
  format_flag(evaluate);
  evaluate->callback([&] { handler = cmd_evaluate; });

  auto* board = sub(&app, "leaderboard", "Print stored results ranked by accuracy");
  board->add_option("--input", o.input, "Results (.jsonl records or .tsv table)")->check(CLI::ExistingFile);
  format_flag(board);
  board->callback([&] { handler = cmd_leaderboard; });

  auto* recommend = sub(&app, "recommend", "Best cell for an objective");
  recommend->add_option("--objective", o.objective, "precision, recall, f1, f05, f2, auc")->required();
  recommend->add_option("--input", o.input, "Results (.jsonl records or .tsv table)")->check(CLI::ExistingFile);
  format_flag(recommend);
  recommend->callback([&] { handler = cmd_recommend; });

  auto* predict = sub(&app, "predict", "Score records with a trained model");
  predict->add_option("--model", o.model, "Model file")->required()->check(CLI::ExistingFile);
  predict->add_option("file", o.predict_file, "JSON-lines records")->required()->check(CLI::ExistingFile);
  format_flag(predict);
  predict->callback([&] { handler = cmd_predict; });

  auto* demo = sub(&app, "demo-data", "Write the seeded synthetic corpus and its votes");
  demo->add_option("--out", o.demo_out, "Output directory")->required();
  demo->add_option("--seed", o.demo_seed, "Generator seed")->capture_default_str();
  demo->add_option("--documents", o.demo_documents, "Labeled records")->capture_default_str();
  demo->callback([&] { handler = cmd_demo_data; });

  try {
    app.parse(argc, argv);
    return handler ? handler(o) : 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: IoError: " << e.what() << '\n';
    return 1;
  }
}
