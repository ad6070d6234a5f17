#include "bopgraph/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "bopgraph/statistics.hpp"
#include "json.hpp"

namespace bopgraph {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMinSeedsPerClass = 2;

bool every_class_has(const LabelAssignment& labels, std::size_t min_seeds) {
  for (int c = 0; c < labels.num_classes(); ++c)
    if (labels.class_count(c) < min_seeds) return false;
  return true;
}

ClassifierSpec spec_for(Method method, std::optional<double> parameter) {
  return ClassifierSpec{method, method_has_parameter(method) ? parameter : std::nullopt};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Serialises warnings coming from worker threads and drops repeats.
WarningSink locked_once(const WarningSink& sink, std::mutex& mutex, std::set<std::string>& seen) {
  if (!sink) return {};
  return [&sink, &mutex, &seen](std::string_view message) {
    std::lock_guard lock(mutex);
    if (seen.emplace(message).second) sink(message);
  };
}

}  // namespace

Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (std::uint64_t p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

MaskedLabels mask_labels(const LabelAssignment& truth, double rate, Rng& rng) {
  if (!(rate > 0.0 && rate <= 1.0)) throw InputError("labeling rate must lie in (0, 1]");
  const auto labeled = truth.labeled_nodes();
  if (rate == 1.0) return {truth, {}};

  const int m = truth.num_classes();
  const auto total = static_cast<double>(labeled.size());
  // The small slack keeps e.g. 0.7 * 10 from rounding up to 8.
  const auto keep_total = static_cast<std::size_t>(std::ceil(rate * total - 1e-9));

  std::vector<std::size_t> sizes(static_cast<std::size_t>(m)), quota(static_cast<std::size_t>(m));
  std::vector<double> remainder(static_cast<std::size_t>(m));
  std::size_t allocated = 0;
  for (int c = 0; c < m; ++c) {
    const auto cc = static_cast<std::size_t>(c);
    sizes[cc] = truth.class_count(c);
    if (sizes[cc] < kMinSeedsPerClass)
      throw InputError("class " + std::to_string(c) + " has fewer than 2 labeled nodes");
    const double exact = rate * static_cast<double>(sizes[cc]) * static_cast<double>(keep_total) /
                         (rate * total);
    quota[cc] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainder[cc] = exact - static_cast<double>(quota[cc]);
    allocated += quota[cc];
  }
  std::vector<std::size_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; allocated < keep_total; k = (k + 1) % order.size()) {
    if (quota[order[k]] < sizes[order[k]]) {
      ++quota[order[k]];
      ++allocated;
    }
  }

  if (keep_total < kMinSeedsPerClass * static_cast<std::size_t>(m))
    throw InputError("labeling rate " + format_number(rate) + " keeps " +
                     std::to_string(keep_total) + " labels, fewer than 2 per class for " +
                     std::to_string(m) + " classes");
  for (auto& q : quota) q = std::max(q, kMinSeedsPerClass);
  std::size_t kept = std::accumulate(quota.begin(), quota.end(), std::size_t{0});
  while (kept > keep_total) {
    // Give back from the class holding the most, lowest id first.
    std::size_t donor = 0;
    for (std::size_t c = 1; c < quota.size(); ++c)
      if (quota[c] > quota[donor]) donor = c;
    --quota[donor];
    --kept;
  }

  std::vector<std::size_t> hidden;
  for (int c = 0; c < m; ++c) {
    auto members = truth.class_members(c);
    std::shuffle(members.begin(), members.end(), rng);
    hidden.insert(hidden.end(), members.begin() + static_cast<std::ptrdiff_t>(quota[static_cast<std::size_t>(c)]),
                  members.end());
  }
  std::sort(hidden.begin(), hidden.end());
  return {truth.without(hidden), hidden};
}

std::vector<std::vector<std::size_t>> partition_seeds(const LabelAssignment& train, int folds,
                                                      Rng& rng) {
  if (folds < 2) throw InputError("cross-validation needs at least 2 folds");
  auto seeds = train.labeled_nodes();
  std::shuffle(seeds.begin(), seeds.end(), rng);
  const std::size_t k = std::min(static_cast<std::size_t>(folds), seeds.size());
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t p = 0; p < seeds.size(); ++p) out[p % k].push_back(seeds[p]);
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

TuningResult nested_cv_tune(Method method, const std::vector<double>& grid, const Graph& graph,
                            const LabelAssignment& train, int inner_folds, Rng& rng,
                            const WarningSink& warnings) {
  TuningResult result;
  result.inner_accuracy = std::numeric_limits<double>::quiet_NaN();
  if (!method_has_parameter(method)) {
    spec_for(method, std::nullopt).validate();
    return result;
  }
  if (grid.empty()) throw InputError(std::string(method_name(method)) + ": empty tuning grid");
  for (double v : grid) spec_for(method, v).validate();
  if (grid.size() == 1) {
    result.parameter = grid.front();
    return result;
  }

  const auto folds = partition_seeds(train, inner_folds, rng);
  std::vector<LabelAssignment> fold_train;
  std::vector<const std::vector<std::size_t>*> fold_test;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    auto reduced = train.without(folds[f]);
    if (!every_class_has(reduced, kMinSeedsPerClass)) {
      ++result.folds_skipped;
      continue;
    }
    fold_train.push_back(std::move(reduced));
    fold_test.push_back(&folds[f]);
  }
  result.folds_used = fold_train.size();
  if (result.folds_skipped > 0)
    warn(warnings, std::string(method_name(method)) + ": " + std::to_string(result.folds_skipped) +
                       " of " + std::to_string(folds.size()) +
                       " inner folds skipped, a class would keep fewer than 2 seeds");
  if (fold_train.empty())
    throw InputError(std::string(method_name(method)) +
                     ": every inner fold was skipped; too few seeds to tune");

  double best_accuracy = -1.0;
  for (double value : grid) {
    double mean = 0.0;
    try {
      const auto prepared = prepare_classifier(graph, spec_for(method, value));
      for (std::size_t f = 0; f < fold_train.size(); ++f)
        mean += accuracy(prepared->predict(fold_train[f]).labels, train, *fold_test[f]);
    } catch (const NumericalError& e) {
      warn(warnings, std::string(method_name(method)) + ": grid value " + format_number(value) +
                         " dropped: " + e.what());
      continue;
    }
    mean /= static_cast<double>(fold_train.size());
    const bool better = mean > best_accuracy ||
                        (mean == best_accuracy && result.parameter && value < *result.parameter);
    if (better) {
      best_accuracy = mean;
      result.parameter = value;
    }
  }
  if (!result.parameter)
    throw NumericalError(std::string(method_name(method)) + ": no grid value could be evaluated");
  result.inner_accuracy = best_accuracy;
  return result;
}

double accuracy(const std::vector<int>& predicted, const LabelAssignment& truth,
                const std::vector<std::size_t>& nodes) {
  if (nodes.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t correct = 0;
  for (std::size_t node : nodes)
    if (predicted.at(node) == truth.label(node)) ++correct;
  return static_cast<double>(correct) / static_cast<double>(nodes.size());
}

double time_method(const ClassifierSpec& spec, const Graph& graph, const LabelAssignment& labels,
                   int repetitions) {
  if (repetitions < 1) throw InputError("repetitions must be at least 1");
  double total = 0.0;
  for (int r = 0; r < repetitions; ++r) {
    const auto start = Clock::now();
    const Prediction prediction = classify(graph, labels, spec);
    total += seconds_since(start);
    if (prediction.labels.size() != graph.size()) throw NumericalError("bad prediction size");
  }
  return total / repetitions;
}

std::vector<MethodPlan> default_plans() {
  std::vector<MethodPlan> plans;
  for (Method m : all_methods()) plans.push_back({m, default_grid(m)});
  return plans;
}

void ExperimentConfig::validate() const {
  if (labeling_rates.empty()) throw InputError("at least one labeling rate is required");
  for (double r : labeling_rates)
    if (!(r > 0.0 && r <= 1.0)) throw InputError("labeling rates must lie in (0, 1]");
  if (runs < 1) throw InputError("runs must be at least 1");
  if (outer_folds < 2 || inner_folds < 2) throw InputError("folds must be at least 2");
  if (methods.empty()) throw InputError("at least one method is required");
  if (jobs < 1) throw InputError("jobs must be at least 1");
  for (const auto& plan : methods) {
    if (method_has_parameter(plan.method) && plan.grid.empty())
      throw InputError(std::string(method_name(plan.method)) + ": empty grid");
    if (!method_has_parameter(plan.method) && !plan.grid.empty())
      throw InputError(std::string(method_name(plan.method)) + " takes no parameter");
  }
}

std::optional<double> ExperimentReport::mean_accuracy(Method method, double rate) const {
  const auto values = accuracies(method, rate);
  if (values.empty()) return std::nullopt;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::vector<double> ExperimentReport::accuracies(Method method, double rate) const {
  std::vector<double> out;
  for (const auto& cell : cells)
    if (cell.method == method && cell.rate == rate && cell.accuracy) out.push_back(*cell.accuracy);
  return out;
}

double ExperimentReport::mean_seconds(Method method) const {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& cell : cells)
    if (cell.method == method && cell.accuracy) {
      total += cell.seconds;
      ++count;
    }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

namespace {

std::vector<ExperimentCell> run_cell(const Graph& graph, const LabelAssignment& truth,
                                     const ExperimentConfig& config, std::size_t rate_index,
                                     int run, const WarningSink& warnings) {
  const double rate = config.labeling_rates[rate_index];
  Rng mask_rng = derive_rng(config.seed, {rate_index, static_cast<std::uint64_t>(run)});
  const MaskedLabels masked = mask_labels(truth, rate, mask_rng);

  const std::size_t k =
      std::min(static_cast<std::size_t>(config.outer_folds), masked.test.size());
  std::vector<std::vector<std::size_t>> outer(k);
  for (std::size_t p = 0; p < masked.test.size(); ++p) outer[p % k].push_back(masked.test[p]);

  std::vector<ExperimentCell> cells;
  for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
    const MethodPlan& plan = config.methods[mi];
    ExperimentCell cell;
    cell.method = plan.method;
    cell.rate = rate;
    cell.run = run;
    cell.test_size = masked.test.size();
    if (masked.test.empty()) {
      cells.push_back(std::move(cell));
      continue;
    }
    std::map<std::optional<double>, Prediction> predictions;
    double accuracy_sum = 0.0;
    double seconds = 0.0;
    std::size_t timed = 0;
    for (std::size_t f = 0; f < k; ++f) {
      Rng tune_rng = derive_rng(config.seed, {rate_index, static_cast<std::uint64_t>(run), mi, f});
      const TuningResult tuned = nested_cv_tune(plan.method, plan.grid, graph, masked.train,
                                                config.inner_folds, tune_rng, warnings);
      cell.tuned.push_back(tuned.parameter);
      auto it = predictions.find(tuned.parameter);
      if (it == predictions.end()) {
        const auto start = Clock::now();
        Prediction prediction = classify(graph, masked.train, spec_for(plan.method, tuned.parameter));
        seconds += seconds_since(start);
        ++timed;
        it = predictions.emplace(tuned.parameter, std::move(prediction)).first;
      }
      accuracy_sum += accuracy(it->second.labels, truth, outer[f]);
    }
    cell.accuracy = accuracy_sum / static_cast<double>(k);
    cell.seconds = seconds / static_cast<double>(timed);
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace

ExperimentReport run_experiment(const Graph& graph, const LabelAssignment& truth,
                                const ExperimentConfig& config, const WarningSink& warnings) {
  config.validate();
  if (truth.size() != graph.size()) throw InputError("labels do not cover the graph");
  if (!truth.unlabeled_nodes().empty())
    throw InputError("experiments need a label for every node (ground truth)");

  const std::size_t num_rates = config.labeling_rates.size();
  const std::size_t num_slots = num_rates * static_cast<std::size_t>(config.runs);
  std::vector<std::vector<ExperimentCell>> slots(num_slots);
  std::vector<std::exception_ptr> errors(num_slots);

  std::mutex warn_mutex;
  std::set<std::string> seen_warnings;
  const WarningSink safe_warnings = locked_once(warnings, warn_mutex, seen_warnings);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t s = next++; s < num_slots; s = next++) {
      const std::size_t rate_index = s / static_cast<std::size_t>(config.runs);
      const int run = static_cast<int>(s % static_cast<std::size_t>(config.runs));
      try {
        slots[s] = run_cell(graph, truth, config, rate_index, run, safe_warnings);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(config.jobs, static_cast<int>(num_slots));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);

  ExperimentReport report;
  report.config = config;
  report.num_nodes = graph.size();
  report.num_classes = truth.num_classes();
  for (auto& slot : slots)
    for (auto& cell : slot) report.cells.push_back(std::move(cell));
  return report;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string report_to_json(const ExperimentReport& report, bool include_timings) {
  using nlohmann::ordered_json;
  // Numbers go through format_number so the text is stable across runs.
  auto number = [](double v) { return ordered_json::parse(format_number(v)); };
  auto optional_number = [&](std::optional<double> v) -> ordered_json {
    return v ? number(*v) : ordered_json(nullptr);
  };

  ordered_json config;
  const auto& c = report.config;
  config["labeling_rates"] = ordered_json::array();
  for (double r : c.labeling_rates) config["labeling_rates"].push_back(number(r));
  config["runs"] = c.runs;
  config["outer_folds"] = c.outer_folds;
  config["inner_folds"] = c.inner_folds;
  config["seed"] = c.seed;
  config["methods"] = ordered_json::array();
  for (const auto& plan : c.methods) {
    ordered_json m;
    m["method"] = std::string(method_name(plan.method));
    m["grid"] = ordered_json::array();
    for (double g : plan.grid) m["grid"].push_back(number(g));
    config["methods"].push_back(m);
  }

  ordered_json cells = ordered_json::array();
  for (const auto& cell : report.cells) {
    ordered_json j;
    j["method"] = std::string(method_name(cell.method));
    j["rate"] = number(cell.rate);
    j["run"] = cell.run;
    j["test_size"] = cell.test_size;
    j["accuracy"] = optional_number(cell.accuracy);
    j["skipped"] = !cell.accuracy.has_value();
    j["tuned"] = ordered_json::array();
    for (const auto& t : cell.tuned) j["tuned"].push_back(optional_number(t));
    if (include_timings) j["seconds"] = number(cell.seconds);
    cells.push_back(j);
  }

  ordered_json aggregate = ordered_json::array();
  for (const auto& plan : c.methods)
    for (double rate : c.labeling_rates) {
      ordered_json a;
      a["method"] = std::string(method_name(plan.method));
      a["rate"] = number(rate);
      a["mean_accuracy"] = optional_number(report.mean_accuracy(plan.method, rate));
      aggregate.push_back(a);
    }

  // One-sided paired t-tests between every ordered pair of methods per rate.
  ordered_json significance = ordered_json::array();
  if (c.runs >= 2)
    for (double rate : c.labeling_rates)
      for (const auto& a : c.methods)
        for (const auto& b : c.methods) {
          if (a.method == b.method) continue;
          const auto xs = report.accuracies(a.method, rate);
          const auto ys = report.accuracies(b.method, rate);
          if (xs.size() != ys.size() || xs.size() < 2) continue;
          ordered_json t;
          t["rate"] = number(rate);
          t["better"] = std::string(method_name(a.method));
          t["than"] = std::string(method_name(b.method));
          t["p_value"] = number(paired_t_test_one_sided(xs, ys));
          significance.push_back(t);
        }

  ordered_json root;
  root["nodes"] = report.num_nodes;
  root["classes"] = report.num_classes;
  root["config"] = config;
  root["cells"] = cells;
  root["aggregate"] = aggregate;
  root["significance"] = significance;
  return root.dump(2) + "\n";
}

std::string aggregate_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "method";
  for (double rate : report.config.labeling_rates) out << ',' << format_number(rate);
  out << '\n';
  for (const auto& plan : report.config.methods) {
    out << method_name(plan.method);
    for (double rate : report.config.labeling_rates) {
      const auto mean = report.mean_accuracy(plan.method, rate);
      out << ',' << (mean ? format_number(*mean) : "");
    }
    out << '\n';
  }
  return out.str();
}

std::string timing_csv(const ExperimentReport& report, const std::string& dataset) {
  std::ostringstream out;
  out << "dataset";
  for (const auto& plan : report.config.methods) out << ',' << method_name(plan.method);
  out << '\n' << dataset;
  for (const auto& plan : report.config.methods)
    out << ',' << format_number(report.mean_seconds(plan.method));
  out << '\n';
  return out.str();
}

}  // namespace bopgraph
