// Copyright 2026 The cfvfp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfvfp/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "cfvfp/errors.h"
#include "cfvfp/game_tree.h"
#include "cfvfp/games.h"
#include "cfvfp/metrics.h"
#include "cfvfp/normal_form.h"

namespace cfvfp {
namespace {

constexpr std::string_view kPerTrialSeed = "seed=trial";

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Csv(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

bool IsNormalForm(const SolverSpec& spec) {
  return spec.algorithm == "rm" || spec.algorithm == "fp";
}

std::int64_t ParsePositive(std::string_view text, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 1) {
    throw ConfigError(std::string(what) + " must be a positive integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::string TrialSelector(const std::string& game, std::uint64_t seed) {
  std::string out = game;
  const std::size_t pos = out.find(kPerTrialSeed);
  if (pos != std::string::npos) {
    out.replace(pos, kPerTrialSeed.size(),
                "seed=" + std::to_string(seed % (1ULL << 62)));
  }
  return out;
}

bool PerTrialGame(const std::string& game) {
  return game.find(kPerTrialSeed) != std::string::npos;
}

struct Progress {
  std::int64_t iteration = 0;
  std::int64_t nodes = 0;
};

template <typename Step, typename Eval>
std::vector<Snapshot> Drive(const Budget& budget, const Cadence& cadence,
                            Step&& step, Eval&& eval) {
  using Clock = std::chrono::steady_clock;
  std::vector<Snapshot> rows;
  Progress progress;
  std::int64_t elapsed = 0;
  std::int64_t next_mark = cadence.value;
  auto axis = [&] {
    return cadence.kind == AxisKind::kNodes ? progress.nodes
                                            : progress.iteration;
  };
  auto done = [&] {
    switch (budget.kind) {
      case BudgetKind::kIterations:
        return progress.iteration >= budget.value;
      case BudgetKind::kNodes:
        return progress.nodes >= budget.value;
      case BudgetKind::kMillis:
        return elapsed >= budget.value * 1'000'000;
    }
    return true;
  };
  auto record = [&](std::int64_t mark) {
    Snapshot s;
    s.iteration = progress.iteration;
    s.nodes = progress.nodes;
    s.elapsed_ns = elapsed;
    s.mark = mark;
    s.exploitability = eval();
    rows.push_back(s);
  };
  while (!done()) {
    const auto start = Clock::now();
    progress = step();
    elapsed += std::chrono::duration_cast<std::chrono::nanoseconds>(
                   Clock::now() - start)
                   .count();
    if (axis() >= next_mark) {
      const std::int64_t mark = axis() / cadence.value * cadence.value;
      next_mark = mark + cadence.value;
      record(mark);
    }
  }
  if (rows.empty() || rows.back().iteration != progress.iteration) {
    record(axis());
  }
  return rows;
}

RunRecord BaseRecord(const ExperimentConfig& config, const SolverSpec& spec,
                     int trial) {
  RunRecord rec;
  rec.game = config.game;
  rec.solver = spec.label;
  rec.trial = trial;
  rec.seed = TrialSeed(config.seed, trial);
  rec.config_hash = ConfigHash(config);
  return rec;
}

RunRecord RunNormalFormTrial(const ExperimentConfig& config,
                             const SolverSpec& spec, int trial,
                             const MatrixGame& matrix) {
  RunRecord rec = BaseRecord(config, spec, trial);
  const LearnerKind kind = spec.algorithm == "rm"
                               ? LearnerKind::kRegretMatching
                               : LearnerKind::kFictitiousPlay;
  Rng rng(rec.seed);
  LearnerState row = LearnerState::Make(kind, matrix.rows());
  LearnerState col = LearnerState::Make(kind, matrix.cols());
  if (spec.random_initial_policy) {
    for (LearnerState* s : {&row, &col}) {
      double total = 0.0;
      for (double& x : s->current) total += (x = 1.0 - rng.Uniform());
      for (double& x : s->current) x /= total;
    }
  }
  std::int64_t t = 0;
  auto pure = [](const Policy& p) {
    for (int a = 0; a < static_cast<int>(p.size()); ++a) {
      if (p[a] == 1.0) return a;
    }
    return -1;
  };
  auto step = [&] {
    const int pc = pure(col.current);
    const int pr = pure(row.current);
    const auto rp = pc >= 0 ? matrix.PurePayoffs(0, pc)
                            : matrix.RowPayoffs(col.current);
    const auto cp = pr >= 0 ? matrix.PurePayoffs(1, pr)
                            : matrix.ColPayoffs(row.current);
    LearnerObserve(row, rp);
    LearnerObserve(col, cp);
    LearnerAdvance(row, rng);
    LearnerAdvance(col, rng);
    return Progress{++t, 0};
  };
  auto eval = [&] {
    return ExploitabilityNf(matrix, AveragePolicy(row), AveragePolicy(col))
        .total;
  };
  rec.rows = Drive(config.budget, config.cadence, step, eval);
  return rec;
}

RunRecord RunTreeTrial(const ExperimentConfig& config, const SolverSpec& spec,
                       int trial, const GameSelection& selection,
                       const GameTree& tree) {
  RunRecord rec = BaseRecord(config, spec, trial);
  SolverConfig sc;
  sc.algorithm = ParseAlgorithm(spec.algorithm);
  sc.weight = spec.weight;
  sc.pruning = spec.pruning;
  sc.prune_threshold = spec.prune_threshold;
  sc.simultaneous = spec.simultaneous;
  sc.random_initial_policy = spec.random_initial_policy;
  sc.seed = rec.seed;
  SolverState state(selection.game, sc);
  auto step = [&] {
    RunIteration(state);
    return Progress{state.iteration(), state.nodes_touched()};
  };
  auto eval = [&] {
    return Exploitability(tree, AverageTreeProfile(tree, state)).total;
  };
  rec.rows = Drive(config.budget, config.cadence, step, eval);
  if (config.save_checkpoints) {
    std::ostringstream out;
    SaveCheckpoint(state, selection.canonical, out);
    rec.checkpoint = out.str();
  }
  return rec;
}

struct Prepared {
  GameSelection selection;
  std::shared_ptr<const GameTree> tree;
};

Prepared Prepare(const std::string& selector, bool need_tree) {
  Prepared p;
  p.selection = ParseGameSelector(selector);
  if (need_tree) {
    p.tree = std::make_shared<const GameTree>(BuildGameTree(*p.selection.game));
  }
  return p;
}

RunRecord RunPrepared(const ExperimentConfig& config, const SolverSpec& spec,
                      int trial, const Prepared& prepared) {
  if (IsNormalForm(spec)) {
    return RunNormalFormTrial(config, spec, trial, *prepared.selection.matrix);
  }
  return RunTreeTrial(config, spec, trial, prepared.selection, *prepared.tree);
}

bool NeedsTree(const ExperimentConfig& config) {
  for (const auto& s : config.solvers) {
    if (!IsNormalForm(s)) return true;
  }
  return false;
}

bool ParseBool(std::string_view v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + std::string(v) + "'");
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view AxisKindName(AxisKind kind) {
  switch (kind) {
    case AxisKind::kIteration: return "iteration";
    case AxisKind::kNodes: return "nodes";
    case AxisKind::kTime: return "time_ns";
  }
  return "unknown";
}

Budget ParseBudget(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("budget must be iters=V, nodes=V or ms=V");
  }
  const std::string_view kind = text.substr(0, eq);
  Budget b;
  b.value = ParsePositive(text.substr(eq + 1), "budget");
  if (kind == "iters" || kind == "iterations") {
    b.kind = BudgetKind::kIterations;
  } else if (kind == "nodes") {
    b.kind = BudgetKind::kNodes;
  } else if (kind == "ms") {
    b.kind = BudgetKind::kMillis;
  } else {
    throw ConfigError("unknown budget kind '" + std::string(kind) + "'");
  }
  return b;
}

Cadence ParseCadence(std::string_view text) {
  Cadence c;
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) {
    c.value = ParsePositive(text, "cadence");
    return c;
  }
  const std::string_view kind = text.substr(0, eq);
  c.value = ParsePositive(text.substr(eq + 1), "cadence");
  if (kind == "iters" || kind == "iterations") {
    c.kind = AxisKind::kIteration;
  } else if (kind == "nodes") {
    c.kind = AxisKind::kNodes;
  } else {
    throw ConfigError("unknown cadence kind '" + std::string(kind) + "'");
  }
  return c;
}

void ExperimentConfig::Validate() const {
  if (game.empty()) throw ConfigError("no game selected");
  if (solvers.empty()) throw ConfigError("no solver selected");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (budget.value < 1) throw ConfigError("budget must be positive");
  if (cadence.value < 1) throw ConfigError("cadence must be positive");
  if (cadence.kind == AxisKind::kTime) {
    throw ConfigError("cadence must count iterations or nodes");
  }
  if (threads < 0) throw ConfigError("threads must be >= 0");
  const GameSelection sel =
      ParseGameSelector(TrialSelector(game, TrialSeed(seed, 0)));
  std::vector<std::string> labels;
  for (const auto& s : solvers) {
    if (std::find(labels.begin(), labels.end(), s.label) != labels.end()) {
      throw ConfigError("duplicate solver label '" + s.label + "'");
    }
    labels.push_back(s.label);
    if (IsNormalForm(s)) {
      if (!sel.matrix) {
        throw ConfigError("solver " + s.algorithm + " needs a matrix game");
      }
      if (budget.kind == BudgetKind::kNodes ||
          cadence.kind == AxisKind::kNodes) {
        throw ConfigError("normal-form learners do not count nodes");
      }
    } else {
      ParseAlgorithm(s.algorithm);
      if (!(s.prune_threshold >= 0.0 && s.prune_threshold < 1.0)) {
        throw ConfigError("prune threshold must be in [0, 1)");
      }
    }
  }
}

std::string ExperimentConfig::Canonical() const {
  std::ostringstream out;
  out << "game=" << game << ";trials=" << trials << ";budget="
      << static_cast<int>(budget.kind) << ":" << budget.value
      << ";cadence=" << static_cast<int>(cadence.kind) << ":" << cadence.value
      << ";seed=" << seed;
  for (const auto& s : solvers) {
    out << ";solver=" << s.label << "," << s.algorithm << ","
        << WeightSchemeName(s.weight) << "," << s.pruning << ","
        << FormatDouble(s.prune_threshold) << "," << s.simultaneous << ","
        << s.random_initial_policy;
  }
  return out.str();
}

Interval NormalInterval(const std::vector<double>& samples) {
  if (samples.empty()) throw InvalidParams("interval of empty sample");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  const double sd = samples.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  const double half = 1.645 * sd / std::sqrt(n);
  return {mean, mean - half, mean + half};
}

Interval BootstrapInterval(const std::vector<double>& samples, Rng& rng,
                           int resamples) {
  if (samples.empty()) throw InvalidParams("interval of empty sample");
  if (resamples < 1) throw InvalidParams("resamples must be positive");
  const int n = static_cast<int>(samples.size());
  std::vector<double> means(resamples);
  for (double& m : means) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += samples[rng.UniformInt(n)];
    m = s / n;
  }
  std::sort(means.begin(), means.end());
  auto at = [&](double q) {
    const int i = std::clamp(static_cast<int>(std::floor(q * resamples)), 0,
                             resamples - 1);
    return means[i];
  };
  double mean = 0.0;
  for (double x : samples) mean += x;
  return {mean / n, at(0.05), at(0.95)};
}

std::uint64_t TrialSeed(std::uint64_t master, int trial) {
  return MixSeed(master, static_cast<std::uint64_t>(trial));
}

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.Canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static constexpr char kDigits[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = kDigits[h & 15];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

RunRecord RunTrial(const ExperimentConfig& config, const SolverSpec& solver,
                   int trial) {
  const Prepared prepared =
      Prepare(TrialSelector(config.game, TrialSeed(config.seed, trial)),
              !IsNormalForm(solver));
  return RunPrepared(config, solver, trial, prepared);
}

std::vector<RunRecord> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const bool per_trial = PerTrialGame(config.game);
  std::optional<Prepared> shared;
  if (!per_trial) shared = Prepare(config.game, NeedsTree(config));

  const std::size_t jobs = config.solvers.size() * config.trials;
  std::vector<RunRecord> out(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const SolverSpec& spec = config.solvers[j / config.trials];
      const int trial = static_cast<int>(j % config.trials);
      try {
        out[j] = shared ? RunPrepared(config, spec, trial, *shared)
                        : RunTrial(config, spec, trial);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(jobs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<SummaryRow> Summarize(const std::vector<RunRecord>& records,
                                  AxisKind x_kind, IntervalMethod method,
                                  std::uint64_t seed) {
  std::vector<std::string> order;
  std::map<std::string, std::map<std::int64_t, std::vector<double>>> groups;
  std::map<std::string, std::string> games;
  for (const auto& rec : records) {
    if (!groups.count(rec.solver)) order.push_back(rec.solver);
    games[rec.solver] = rec.game;
    for (const auto& s : rec.rows) {
      groups[rec.solver][s.mark].push_back(s.exploitability);
    }
  }
  std::vector<SummaryRow> rows;
  Rng rng(seed);
  for (const auto& solver : order) {
    for (const auto& [mark, values] : groups[solver]) {
      const Interval iv = method == IntervalMethod::kNormal
                              ? NormalInterval(values)
                              : BootstrapInterval(values, rng);
      SummaryRow row;
      row.game = games[solver];
      row.solver = solver;
      row.x_kind = x_kind;
      row.x = mark;
      row.trials = static_cast<int>(values.size());
      row.mean = iv.mean;
      row.low = iv.low;
      row.high = iv.high;
      rows.push_back(row);
    }
  }
  return rows;
}

void EmitPlotData(const std::vector<RunRecord>& records,
                  const std::vector<AxisKind>& axes, std::ostream& out) {
  bool any = false;
  for (const auto& rec : records) any = any || !rec.rows.empty();
  if (!any || axes.empty()) throw InvalidParams("no snapshots to emit");
  out << "game,solver,trial,x_kind,x,exploitability\n";
  for (const auto& rec : records) {
    for (const auto& s : rec.rows) {
      for (AxisKind axis : axes) {
        const std::int64_t x = axis == AxisKind::kIteration ? s.iteration
                               : axis == AxisKind::kNodes   ? s.nodes
                                                            : s.elapsed_ns;
        out << Csv(rec.game) << ',' << Csv(rec.solver) << ',' << rec.trial << ','
            << AxisKindName(axis) << ',' << x << ','
            << FormatDouble(s.exploitability) << '\n';
      }
    }
  }
}

void WriteExperimentOutputs(const ExperimentConfig& config,
                            const std::vector<RunRecord>& records,
                            const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + name);
    return f;
  };
  {
    auto f = open("runs.csv");
    f << "game,solver,trial,seed,config_hash,iteration,nodes,mark,"
         "exploitability\n";
    for (const auto& rec : records) {
      for (const auto& s : rec.rows) {
        f << Csv(rec.game) << ',' << Csv(rec.solver) << ',' << rec.trial << ','
          << rec.seed << ',' << rec.config_hash << ',' << s.iteration << ','
          << s.nodes << ',' << s.mark << ',' << FormatDouble(s.exploitability)
          << '\n';
      }
    }
  }
  {
    auto f = open("runs_timing.csv");
    f << "game,solver,trial,iteration,nodes,elapsed_ns\n";
    for (const auto& rec : records) {
      for (const auto& s : rec.rows) {
        f << Csv(rec.game) << ',' << Csv(rec.solver) << ',' << rec.trial << ','
          << s.iteration << ',' << s.nodes << ',' << s.elapsed_ns << '\n';
      }
    }
  }
  {
    auto f = open("summary.csv");
    f << "game,solver,x_kind,x,trials,mean,ci_low,ci_high\n";
    for (const auto& row :
         Summarize(records, config.cadence.kind, config.interval,
                   config.seed)) {
      f << Csv(row.game) << ',' << Csv(row.solver) << ','
        << AxisKindName(row.x_kind)
        << ',' << row.x << ',' << row.trials << ',' << FormatDouble(row.mean)
        << ',' << FormatDouble(row.low) << ',' << FormatDouble(row.high)
        << '\n';
    }
  }
  {
    auto f = open("plotdata.csv");
    EmitPlotData(records, {AxisKind::kIteration, AxisKind::kNodes}, f);
  }
  {
    auto f = open("plotdata_timing.csv");
    EmitPlotData(records, {AxisKind::kTime}, f);
  }
  bool any_nf = false;
  for (const auto& s : config.solvers) any_nf = any_nf || IsNormalForm(s);
  if (any_nf) {
    auto f = open("nf_timing.csv");
    f << "trial,iter,algo,exploitability,elapsed_ns\n";
    for (const auto& rec : records) {
      for (const auto& s : rec.rows) {
        f << rec.trial << ',' << s.iteration << ',' << Csv(rec.solver) << ','
          << FormatDouble(s.exploitability) << ',' << s.elapsed_ns << '\n';
      }
    }
  }
  for (const auto& rec : records) {
    if (rec.checkpoint.empty()) continue;
    fs::create_directories(fs::path(out_dir) / "checkpoints", ec);
    auto f = open("checkpoints/" + rec.solver + "_trial" +
                  std::to_string(rec.trial) + ".ckpt");
    f << rec.checkpoint;
  }
}

ExperimentConfig ParseExperimentConfig(std::istream& in) {
  ExperimentConfig config;
  int section = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    const std::size_t hash = line.find('#');
    const std::string text = Trim(line.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(where + "unclosed section");
      std::istringstream head(text.substr(1, text.size() - 2));
      std::string kind, label;
      head >> kind >> label;
      if (kind != "solver" || label.empty()) {
        throw ConfigError(where + "sections are [solver <label>]");
      }
      SolverSpec spec;
      spec.label = label;
      spec.algorithm = label;
      config.solvers.push_back(spec);
      section = static_cast<int>(config.solvers.size()) - 1;
      continue;
    }
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = Trim(text.substr(0, eq));
    const std::string value = Trim(text.substr(eq + 1));
    try {
      if (section < 0) {
        if (key == "game") {
          config.game = value;
        } else if (key == "trials") {
          config.trials = static_cast<int>(ParsePositive(value, "trials"));
        } else if (key == "budget") {
          config.budget = ParseBudget(value);
        } else if (key == "cadence") {
          config.cadence = ParseCadence(value);
        } else if (key == "seed") {
          std::uint64_t v = 0;
          auto [ptr, ec] =
              std::from_chars(value.data(), value.data() + value.size(), v);
          if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw ConfigError("seed must be an unsigned integer");
          }
          config.seed = v;
        } else if (key == "threads") {
          config.threads = static_cast<int>(ParsePositive(value, "threads"));
        } else if (key == "interval") {
          if (value == "normal") {
            config.interval = IntervalMethod::kNormal;
          } else if (value == "bootstrap") {
            config.interval = IntervalMethod::kBootstrap;
          } else {
            throw ConfigError("interval must be normal or bootstrap");
          }
        } else if (key == "checkpoints") {
          config.save_checkpoints = ParseBool(value);
        } else {
          throw ConfigError("unknown key '" + key + "'");
        }
      } else {
        SolverSpec& spec = config.solvers[section];
        if (key == "algorithm") {
          spec.algorithm = value;
        } else if (key == "weight") {
          spec.weight = ParseWeightScheme(value);
        } else if (key == "pruning") {
          spec.pruning = ParseBool(value);
        } else if (key == "threshold") {
          double v = 0;
          auto [ptr, ec] =
              std::from_chars(value.data(), value.data() + value.size(), v);
          if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw ConfigError("threshold must be a number");
          }
          spec.prune_threshold = v;
        } else if (key == "simultaneous") {
          spec.simultaneous = ParseBool(value);
        } else if (key == "random_init") {
          spec.random_initial_policy = ParseBool(value);
        } else {
          throw ConfigError("unknown solver key '" + key + "'");
        }
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return config;
}

}  // namespace cfvfp
