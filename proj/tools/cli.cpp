#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bopgraph/betweenness.hpp"
#include "bopgraph/bop_model.hpp"
#include "bopgraph/classifiers.hpp"
#include "bopgraph/errors.hpp"
#include "bopgraph/evaluation.hpp"
#include "bopgraph/generators.hpp"
#include "bopgraph/graph.hpp"
#include "bopgraph/graph_io.hpp"
#include "bopgraph/path_oracle.hpp"
#include "json.hpp"

namespace bopgraph::cli {
namespace {

using nlohmann::ordered_json;

ordered_json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return ordered_json::parse(format_number(value));
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw InputError("invalid number '" + t + "' in " + what);
  return value;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    part = trim(part);
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const auto& part : split(text)) values.push_back(parse_double(part, what));
  if (values.empty()) throw InputError(what + " is empty");
  return values;
}

Method parse_method_or_throw(const std::string& name) {
  const auto method = parse_method(name);
  if (!method) throw InputError("unknown method '" + name + "'");
  return *method;
}

// Reads a flat key=value file and turns it into command-line tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw InputError(path + ":" + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    if (key.empty() || key == "config")
      throw InputError(path + ":" + std::to_string(line_no) + ": invalid key");
    if (value == "true") {
      tokens.push_back("--" + key);
    } else if (value != "false") {
      tokens.push_back("--" + key);
      tokens.push_back(value);
    }
  }
  return tokens;
}

// Config values go right after the subcommand name so that later
// command-line flags take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (!path || args.empty()) return args;
  auto tokens = config_tokens(*path);
  args.insert(args.begin() + 1, tokens.begin(), tokens.end());
  return args;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw InputError("cannot write file: " + path);
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw InputError("cannot write file: " + path);
  file << content;
  if (!file) throw InputError("failed writing file: " + path);
}

struct Options {
  std::string edges;
  std::string labels;
  bool undirected = false;
  std::string out = "-";
  std::string format = "csv";
  std::string config;
  std::optional<double> theta;

  std::string method;
  std::optional<double> param;
  std::string grid;
  std::optional<int> class_id;
  std::optional<int> to_class;

  std::string rates = "0.1,0.3,0.5,0.7,0.9";
  int runs = 20;
  int outer_folds = 10;
  int inner_folds = 10;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string methods = "all";
  std::string dataset;

  double epsilon = 1e-8;
  std::size_t max_n = 8;

  std::string kind = "planted";
  std::size_t blocks = 2;
  std::size_t block_size = 10;
  std::string sizes;
  double p_in = 0.8;
  double p_out = 0.05;
  std::size_t nodes = 10;
  double density = 0.3;
  bool directed = false;
};

Graph load_graph(const Options& o, const WarningSink& warnings) {
  return load_edge_list_file(o.edges, !o.undirected, warnings);
}

// ---- bet -------------------------------------------------------------------

int cmd_bet(const Options& o, std::ostream& out, const WarningSink& warnings) {
  if (o.class_id && o.labels.empty()) throw InputError("--class requires --labels");
  if (o.to_class && !o.class_id) throw InputError("--to-class requires --class");
  if (!o.labels.empty() && !o.class_id) throw InputError("--labels requires --class");
  const double theta = o.theta.value_or(1.0);
  if (!(theta > 0.0)) throw InputError("theta must be positive");

  const Graph graph = load_graph(o, warnings);
  const BopModel model = build_model(graph, theta);

  std::string kind = "betweenness";
  ScoreVector scores;
  if (o.class_id) {
    const LabelAssignment labels = load_labels_file(o.labels, graph.size());
    const auto check_class = [&](int c) {
      if (c < 0 || c >= labels.num_classes())
        throw InputError("class " + std::to_string(c) + " out of range [0, " +
                         std::to_string(labels.num_classes()) + ")");
    };
    check_class(*o.class_id);
    if (o.to_class) {
      check_class(*o.to_class);
      if (*o.to_class == *o.class_id) throw InputError("--to-class must differ from --class");
      kind = "group";
      scores = group_betweenness(model, labels.class_indicator(*o.class_id),
                                 labels.class_indicator(*o.to_class));
    } else {
      kind = "within_class";
      scores = within_class_betweenness(model, labels.class_indicator(*o.class_id), *o.class_id);
    }
  } else {
    scores = bop_betweenness(model);
  }

  Sink sink(o.out, out);
  if (o.format == "json") {
    ordered_json root;
    root["kind"] = kind;
    root["theta"] = json_number(theta);
    if (o.class_id) root["class"] = *o.class_id;
    if (o.to_class) root["to_class"] = *o.to_class;
    root["scores"] = ordered_json::array();
    for (Eigen::Index i = 0; i < scores.values.size(); ++i)
      root["scores"].push_back(json_number(scores.values(i)));
    sink.get() << root.dump(2) << '\n';
  } else {
    sink.get() << "node,score\n";
    for (Eigen::Index i = 0; i < scores.values.size(); ++i)
      sink.get() << i << ',' << format_number(scores.values(i)) << '\n';
  }
  return kOk;
}

// ---- classify --------------------------------------------------------------

int cmd_classify(const Options& o, std::ostream& out, const WarningSink& warnings) {
  const Method method = parse_method_or_throw(o.method);
  std::optional<double> param = o.param;
  if (o.theta) {
    if (method != Method::kBop) throw InputError("--theta applies to BOP only");
    if (param && *param != *o.theta) throw InputError("--theta and --param disagree");
    param = o.theta;
  }
  if (param && !o.grid.empty()) throw InputError("--param and --grid are mutually exclusive");

  std::vector<double> grid;
  if (!o.grid.empty()) {
    grid = o.grid == "default" ? default_grid(method) : parse_list(o.grid, "--grid");
    if (!method_has_parameter(method) && !grid.empty())
      throw InputError(std::string(method_name(method)) + " takes no parameter");
  }
  if (method_has_parameter(method) && !param && grid.empty())
    throw InputError(std::string(method_name(method)) + " needs --param or --grid");
  if (grid.empty()) ClassifierSpec{method, param}.validate();
  for (double v : grid) ClassifierSpec{method, v}.validate();
  if (o.inner_folds < 2) throw InputError("folds must be at least 2");

  const Graph graph = load_graph(o, warnings);
  const LabelAssignment labels = load_labels_file(o.labels, graph.size());

  std::optional<TuningResult> tuning;
  if (!grid.empty()) {
    Rng rng = derive_rng(o.seed, {});
    tuning = nested_cv_tune(method, grid, graph, labels, o.inner_folds, rng, warnings);
    param = tuning->parameter;
  }
  const ClassifierSpec spec{method, param};
  const Prediction prediction = classify(graph, labels, spec);

  Sink sink(o.out, out);
  if (o.format == "json") {
    ordered_json root;
    root["method"] = std::string(method_name(method));
    root["parameter"] = param ? json_number(*param) : ordered_json(nullptr);
    if (tuning) {
      ordered_json t;
      t["grid"] = ordered_json::array();
      for (double v : grid) t["grid"].push_back(json_number(v));
      t["inner_folds"] = o.inner_folds;
      t["seed"] = o.seed;
      t["inner_accuracy"] = json_number(tuning->inner_accuracy);
      t["folds_used"] = tuning->folds_used;
      t["folds_skipped"] = tuning->folds_skipped;
      root["tuning"] = t;
    } else {
      root["tuning"] = nullptr;
    }
    root["classes"] = labels.num_classes();
    root["labels"] = prediction.labels;
    root["scores"] = ordered_json::array();
    for (Eigen::Index i = 0; i < prediction.scores.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < prediction.scores.cols(); ++c)
        row.push_back(json_number(prediction.scores(i, c)));
      root["scores"].push_back(row);
    }
    sink.get() << root.dump(2) << '\n';
  } else {
    sink.get() << "node,label\n";
    for (std::size_t i = 0; i < prediction.labels.size(); ++i)
      sink.get() << i << ',' << prediction.labels[i] << '\n';
  }
  return kOk;
}

// ---- benchmark -------------------------------------------------------------

int cmd_benchmark(const Options& o, std::ostream& out, const WarningSink& warnings) {
  if (o.out.empty() || o.out == "-") throw InputError("benchmark needs --out <prefix>");
  ExperimentConfig config;
  config.labeling_rates = parse_list(o.rates, "--rates");
  config.runs = o.runs;
  config.outer_folds = o.outer_folds;
  config.inner_folds = o.inner_folds;
  config.seed = o.seed;
  config.jobs = o.jobs;
  if (o.methods != "all") {
    config.methods.clear();
    for (const auto& name : split(o.methods)) {
      const Method m = parse_method_or_throw(name);
      config.methods.push_back({m, default_grid(m)});
    }
  }
  config.validate();

  const Graph graph = load_graph(o, warnings);
  const LabelAssignment truth = load_labels_file(o.labels, graph.size());
  const ExperimentReport report = run_experiment(graph, truth, config, warnings);

  const std::string dataset =
      o.dataset.empty() ? std::filesystem::path(o.edges).stem().string() : o.dataset;
  const std::string aggregate = aggregate_csv(report);
  write_file(o.out + ".json", report_to_json(report));
  write_file(o.out + "_aggregate.csv", aggregate);
  write_file(o.out + "_timing.csv", timing_csv(report, dataset));
  out << aggregate;
  return kOk;
}

// ---- oracle-check ----------------------------------------------------------

int cmd_oracle_check(const Options& o, std::ostream& out, std::ostream& err,
                     const WarningSink& warnings) {
  const double theta = o.theta.value_or(1.0);
  if (!(theta > 0.0)) throw InputError("theta must be positive");
  if (o.max_n > kOracleMaxNodes)
    throw InputError("--max-n cannot exceed " + std::to_string(kOracleMaxNodes));
  const Graph graph = load_graph(o, warnings);
  if (graph.size() > o.max_n)
    throw InputError("graph too large for oracle: " + std::to_string(graph.size()) +
                     " nodes, max-n is " + std::to_string(o.max_n));
  if (!(o.epsilon > 0.0))
    throw NumericalError("epsilon must be positive: the truncation tail bound is never zero");

  const BopModel model = build_model(graph, theta);
  const Matrix& z = model.fundamental();
  double max_all = 0.0, max_hitting = 0.0, max_tail = 0.0;
  std::size_t failures = 0, pairs = 0;
  for (std::size_t i = 0; i < graph.size(); ++i)
    for (std::size_t j = 0; j < graph.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      const PathSumEstimate all = path_sum_oracle(graph, theta, i, j, o.epsilon, WalkSet::kAll);
      const PathSumEstimate hit =
          path_sum_oracle(graph, theta, i, j, o.epsilon, WalkSet::kHitting);
      const double d_all = std::abs(z(ii, jj) - all.value);
      const double d_hit = std::abs(z(ii, jj) / z(jj, jj) - hit.value);
      if (d_all > o.epsilon + all.tail_bound) ++failures;
      if (d_hit > o.epsilon + hit.tail_bound) ++failures;
      max_all = std::max(max_all, d_all);
      max_hitting = std::max(max_hitting, d_hit);
      max_tail = std::max({max_tail, all.tail_bound, hit.tail_bound});
      ++pairs;
    }

  Sink sink(o.out, out);
  sink.get() << "nodes," << graph.size() << '\n'
             << "pairs," << pairs << '\n'
             << "theta," << format_number(theta) << '\n'
             << "epsilon," << format_number(o.epsilon) << '\n'
             << "max_abs_diff," << format_number(max_all) << '\n'
             << "max_abs_diff_hitting," << format_number(max_hitting) << '\n'
             << "max_tail_bound," << format_number(max_tail) << '\n'
             << "status," << (failures == 0 ? "pass" : "fail") << '\n';
  if (failures != 0) {
    err << "error: " << failures << " entries differ from the path-sum oracle beyond tolerance\n";
    return kNumericalError;
  }
  return kOk;
}

// ---- generate --------------------------------------------------------------

int cmd_generate(const Options& o, std::ostream& out) {
  if (o.out.empty() || o.out == "-") throw InputError("generate needs --out <prefix>");
  std::optional<LabeledGraph> labeled;
  std::optional<Graph> plain;
  if (o.kind == "planted") {
    std::vector<std::size_t> sizes;
    if (!o.sizes.empty()) {
      for (double v : parse_list(o.sizes, "--sizes")) {
        if (!(v >= 1.0) || v != std::floor(v)) throw InputError("--sizes must be positive integers");
        sizes.push_back(static_cast<std::size_t>(v));
      }
    } else {
      sizes.assign(o.blocks, o.block_size);
    }
    labeled = generate_planted_partition(sizes, o.p_in, o.p_out, o.seed);
  } else if (o.kind == "two-cliques") {
    labeled = make_two_cliques(o.block_size);
  } else if (o.kind == "path") {
    plain = make_path(o.nodes);
  } else {
    plain = random_strongly_connected(o.nodes, o.density, o.seed, o.directed);
  }

  const Graph& graph = labeled ? labeled->graph : *plain;
  std::ostringstream edges;
  write_edge_list(edges, graph);
  write_file(o.out + ".edges.tsv", edges.str());
  out << o.out << ".edges.tsv\n";
  if (labeled) {
    std::ostringstream labels;
    write_labels(labels, labeled->labels);
    write_file(o.out + ".labels.csv", labels.str());
    out << o.out << ".labels.csv\n";
  }
  return kOk;
}

// ---- option wiring ---------------------------------------------------------

void add_common(CLI::App* app, Options& o, bool labels_required, bool has_format) {
  app->add_option("--config", o.config, "Flat key=value file of flag defaults");
  app->add_option("--edges", o.edges, "Edge list (TSV: src dst weight)")->required();
  app->add_flag("--undirected", o.undirected, "Treat each edge as both arcs");
  auto* labels = app->add_option("--labels", o.labels, "Labels (CSV: node,class)");
  if (labels_required) labels->required();
  app->add_option("--out", o.out, "Output path ('-' for stdout)");
  if (has_format)
    app->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  const WarningSink warnings = [&err](std::string_view message) {
    err << "warning: " << message << '\n';
  };
  Options o;
  CLI::App app{"Bag-of-paths betweenness and graph-based semi-supervised classification",
               "bopgraph"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* bet = app.add_subcommand("bet", "Node, within-class or group betweenness");
  add_common(bet, o, false, true);
  bet->add_option("--theta", o.theta, "Inverse temperature");
  bet->add_option("--class", o.class_id, "Within-class betweenness of this class");
  bet->add_option("--to-class", o.to_class, "Group betweenness from --class to this class");

  auto* cls = app.add_subcommand("classify", "Semi-supervised node classification");
  add_common(cls, o, true, true);
  cls->add_option("--method", o.method, "BOP, RL, RNL, RCT, HF, RWWR, DW1 or DW2")->required();
  cls->add_option("--param", o.param, "Method parameter");
  cls->add_option("--theta", o.theta, "BoP inverse temperature (same as --param)");
  cls->add_option("--grid", o.grid, "Comma list or 'default'; tunes by inner cross-validation");
  cls->add_option("--inner-folds", o.inner_folds, "Folds for grid tuning");
  cls->add_option("--seed", o.seed, "Seed for grid tuning");

  auto* bench = app.add_subcommand("benchmark", "Masking and nested cross-validation protocol");
  add_common(bench, o, true, false);
  bench->get_option("--out")->description("Report prefix (writes .json, _aggregate.csv, _timing.csv)");
  bench->add_option("--rates", o.rates, "Comma list of labeling rates");
  bench->add_option("--runs", o.runs, "Masking runs per rate");
  bench->add_option("--outer-folds", o.outer_folds, "Outer folds");
  bench->add_option("--inner-folds", o.inner_folds, "Inner folds");
  bench->add_option("--methods", o.methods, "Comma list of methods or 'all'");
  bench->add_option("--seed", o.seed, "Experiment seed");
  bench->add_option("--jobs", o.jobs, "Worker threads");
  bench->add_option("--dataset", o.dataset, "Dataset name in the timing table");

  auto* oracle = app.add_subcommand("oracle-check", "Compare Z against explicit path sums");
  add_common(oracle, o, false, false);
  oracle->add_option("--theta", o.theta, "Inverse temperature");
  oracle->add_option("--epsilon", o.epsilon, "Truncation tolerance");
  oracle->add_option("--max-n", o.max_n, "Largest graph accepted");

  auto* gen = app.add_subcommand("generate", "Write a synthetic graph and its labels");
  gen->add_option("--config", o.config, "Flat key=value file of flag defaults");
  gen->add_option("--out", o.out, "Output prefix")->required();
  gen->add_option("--kind", o.kind, "Generator")
      ->check(CLI::IsMember({"planted", "two-cliques", "path", "random"}));
  gen->add_option("--blocks", o.blocks, "Planted partition: number of blocks");
  gen->add_option("--block-size", o.block_size, "Nodes per block (planted, two-cliques)");
  gen->add_option("--sizes", o.sizes, "Planted partition: comma list of block sizes");
  gen->add_option("--p-in", o.p_in, "Planted partition: edge probability within blocks");
  gen->add_option("--p-out", o.p_out, "Planted partition: edge probability across blocks");
  gen->add_option("--nodes", o.nodes, "Node count (path, random)");
  gen->add_option("--density", o.density, "Extra arc density (random)");
  gen->add_flag("--directed", o.directed, "Directed arcs (random)");
  gen->add_option("--seed", o.seed, "Generator seed");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (bet->parsed()) return cmd_bet(o, out, warnings);
    if (cls->parsed()) return cmd_classify(o, out, warnings);
    if (bench->parsed()) return cmd_benchmark(o, out, warnings);
    if (oracle->parsed()) return cmd_oracle_check(o, out, err, warnings);
    return cmd_generate(o, out);
  } catch (const DegenerateClassError& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerateClass;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace bopgraph::cli
