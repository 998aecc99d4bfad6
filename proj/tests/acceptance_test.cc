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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cfvfp/game.h"
#include "cfvfp/game_tree.h"
#include "cfvfp/games.h"
#include "cfvfp/harness.h"
#include "cfvfp/metrics.h"
#include "cfvfp/normal_form.h"
#include "cfvfp/rng.h"
#include "cfvfp/solver.h"
#include "oracles.h"

namespace cfvfp {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Game sizes.
Outcome Criterion1() {
  Outcome o;
  struct Row {
    const char* selector;
    std::int64_t infosets;
    std::int64_t nodes;
    double seconds;
  };
  for (const Row& row : {Row{"kuhn:x=3,y=1,z=1", 12, 55, 10},
                         Row{"kuhn:x=15,y=1,z=1", 60, 1891, 10},
                         Row{"kuhn:x=50,y=1,z=1", 200, 22051, 10},
                         Row{"kuhn:x=7,y=5,z=3", 364, 6427, 10},
                         Row{"leduc:x=3,y=1,z=1", 288, 1945, 10},
                         Row{"leduc:x=7,y=1,z=1", 1512, 25985, 10},
                         Row{"pam:rounds=4", 224, 68815, 10},
                         Row{"pam:rounds=5", 794, 715655, 60}}) {
    const auto start = Clock::now();
    const TreeCensus c = EnumerateTree(*ParseGameSelector(row.selector).game);
    const double s = Seconds(start);
    o.detail << " " << row.selector << "=(" << c.TotalInfosets() << ","
             << c.nodes << ")";
    o.Check(c.TotalInfosets() == row.infosets && c.nodes == row.nodes,
            row.selector);
    o.Check(s <= row.seconds, std::string(row.selector) + " too slow");
  }
  return o;
}

// Leaky-rock worked example.
Outcome Criterion2() {
  Outcome o;
  const MatrixGame g = RpsLeakyRock();
  LearnerState rm = LearnerState::Make(LearnerKind::kRegretMatching, 4);
  const std::vector<double> scissors = g.PurePayoffs(0, 2);
  LearnerObserve(rm, scissors);
  o.Check(rm.cumulative == std::vector<double>({0.775, -1.225, -0.225, 0.675}),
          "regrets not exact");
  const Policy next = RmNextPolicy(rm);
  o.Check(std::abs(next[0] - 0.775 / 1.45) <= 1e-12 && next[1] == 0.0 &&
              next[2] == 0.0 && std::abs(next[3] - 0.675 / 1.45) <= 1e-12,
          "next policy");
  o.detail << " next=(" << next[0] << "," << next[1] << "," << next[2] << ","
           << next[3] << ")";
  Rng rng(2026);
  LearnerState fp = LearnerState::Make(LearnerKind::kFictitiousPlay, 4);
  LearnerState col = LearnerState::Make(LearnerKind::kFictitiousPlay, 3);
  LearnerObserve(fp, scissors);
  o.Check(FpNextAction(fp, rng) == 0, "fp argmax is not rock");
  LearnerAdvance(fp, rng);
  col.current = {0.0, 0.0, 1.0};
  int lr = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto rp = g.RowPayoffs(col.current);
    const auto cp = g.ColPayoffs(fp.current);
    LearnerObserve(fp, rp);
    LearnerObserve(col, cp);
    LearnerAdvance(fp, rng);
    LearnerAdvance(col, rng);
    lr += fp.current[3] > 0.0;
  }
  o.Check(lr == 0, "fp chose LR");
  o.detail << " lr_selected=" << lr;
  return o;
}

// Convergence on small Kuhn.
Outcome Criterion3() {
  Outcome o;
  auto game = ParseGameSelector("kuhn:x=3,y=1,z=1").game;
  const GameTree tree = BuildGameTree(*game);
  for (Algorithm a : {Algorithm::kCfr, Algorithm::kCfrPlus, Algorithm::kCfvfp,
                      Algorithm::kMccfrEs, Algorithm::kMccfvfp}) {
    SolverConfig c;
    c.algorithm = a;
    c.seed = 1;
    SolverState state(game, c);
    const auto start = Clock::now();
    if (IsMonteCarlo(a)) {
      while (state.nodes_touched() < 10'000'000) RunIteration(state);
    } else {
      while (state.iteration() < 10'000) RunIteration(state);
    }
    const double e = Exploitability(tree, AverageTreeProfile(tree, state)).total;
    const double s = Seconds(start);
    o.detail << " " << AlgorithmName(a) << "=" << e;
    o.Check(e < 1e-2, std::string(AlgorithmName(a)) + " above 1e-2");
    o.Check(s <= 120.0, std::string(AlgorithmName(a)) + " too slow");
  }
  return o;
}

struct HeadToHead {
  int wins = 0;
  int trials = 0;
  double median_ratio = 0.0;
};

HeadToHead CompareMonteCarlo(const std::string& game) {
  ExperimentConfig c;
  c.game = game;
  SolverSpec es;
  es.label = "mccfr-es";
  es.algorithm = "mccfr-es";
  SolverSpec fp;
  fp.label = "mccfvfp";
  fp.algorithm = "mccfvfp";
  c.solvers = {es, fp};
  c.trials = 30;
  c.budget = {BudgetKind::kNodes, 10'000'000};
  c.cadence = {AxisKind::kNodes, 500'000};
  c.seed = 20260101;
  c.threads = 1;
  const std::vector<RunRecord> records = RunExperiment(c);
  HeadToHead h;
  h.trials = c.trials;
  std::vector<double> ratios;
  for (int t = 0; t < c.trials; ++t) {
    const RunRecord& a = records[t];
    const RunRecord& b = records[c.trials + t];
    const Snapshot& last_es = a.rows.back();
    const Snapshot& last_fp = b.rows.back();
    h.wins += last_fp.exploitability <= last_es.exploitability;
    double ratio = std::numeric_limits<double>::infinity();
    for (const Snapshot& s : b.rows) {
      if (s.exploitability <= last_es.exploitability) {
        ratio = double(s.elapsed_ns) / double(last_es.elapsed_ns);
        break;
      }
    }
    ratios.push_back(ratio);
  }
  std::sort(ratios.begin(), ratios.end());
  h.median_ratio = 0.5 * (ratios[14] + ratios[15]);
  return h;
}

// Monte Carlo head-to-head at desk scale.
Outcome Criterion4() {
  Outcome o;
  for (const char* game : {"kuhn:x=15,y=5,z=3", "leduc:x=3,y=1,z=1"}) {
    const HeadToHead h = CompareMonteCarlo(game);
    o.detail << " " << game << ": wins=" << h.wins << "/" << h.trials
             << " median_time_ratio=" << h.median_ratio;
    o.Check(h.wins * 10 >= h.trials * 6, std::string(game) + " win rate");
    o.Check(h.median_ratio <= 0.8, std::string(game) + " time ratio");
  }
  return o;
}

// Node-colour census against the formulas.
Outcome Criterion5() {
  Outcome o;
  int cases = 0;
  for (int g = 2; g <= 4; ++g) {
    for (int h = 3; h <= 7; ++h) {
      const CensusPrediction want = PredictCensus(g, h);
      const CensusPrediction rec = PredictCensusRecurrence(g, h);
      const CompleteTreeGame game(g, h);
      const GameTree tree = BuildGameTree(game);
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto brute = testing::BruteForceLastLayer(g, h, seed);
        const ColorCensus c = CensusByColor(
            tree, testing::PureCompleteTreeProfile(tree, g, seed));
        const auto& layer = c.by_depth.at(h - 1);
        const bool ok = brute[0] == want.red && brute[2] == want.blue &&
                        brute[3] == want.yellow &&
                        brute[0] + brute[2] + brute[3] == want.pass &&
                        layer == brute && rec.blue == want.blue &&
                        rec.yellow == want.yellow;
        o.Check(ok, "g=" + std::to_string(g) + ",h=" + std::to_string(h));
        ++cases;
      }
    }
  }
  const CensusPrediction p = PredictCensus(3, 4);
  o.Check(p.pass == 11, "F_4 pass at g=3");
  o.detail << " cases=" << cases << " g3h4_pass=" << p.pass;
  return o;
}

double MaxDifference(const SolverState& a, const SolverState& b) {
  double worst = 0.0;
  if (a.accumulators().size() != b.accumulators().size()) {
    return std::numeric_limits<double>::infinity();
  }
  for (const auto& x : a.accumulators()) {
    const InfoSetAccumulator* y = b.Find(x.player, x.key);
    if (y == nullptr) return std::numeric_limits<double>::infinity();
    for (int i = 0; i < x.num_actions(); ++i) {
      worst = std::max(worst, std::abs(x.cumulative[i] - y->cumulative[i]));
      worst =
          std::max(worst, std::abs(x.avg_numerator[i] - y->avg_numerator[i]));
      worst = std::max(worst, std::abs(x.policy[i] - y->policy[i]));
    }
    worst = std::max(worst, std::abs(x.avg_denominator - y->avg_denominator));
  }
  return worst;
}

// Exact pruning.
Outcome Criterion6() {
  Outcome o;
  for (const char* selector : {"kuhn:x=3,y=1,z=1", "leduc:x=3,y=1,z=1"}) {
    auto game = ParseGameSelector(selector).game;
    SolverConfig pruned;
    pruned.algorithm = Algorithm::kCfvfp;
    pruned.seed = 6;
    pruned.prune_threshold = 0.0;
    SolverConfig reference = pruned;
    reference.pruning = false;
    SolverState p(game, pruned);
    SolverState r(game, reference);
    double worst = 0.0;
    bool fewer = true;
    for (int t = 1; t <= 100; ++t) {
      const std::int64_t p0 = p.nodes_touched();
      const std::int64_t r0 = r.nodes_touched();
      CfvfpIteration(p);
      CfvfpIteration(r);
      worst = std::max(worst, MaxDifference(p, r));
      if (t > 2 && p.nodes_touched() - p0 >= r.nodes_touched() - r0) {
        fewer = false;
      }
    }
    o.detail << " " << selector << ": max_diff=" << worst
             << " nodes=" << p.nodes_touched() << "/" << r.nodes_touched();
    o.Check(worst <= 1e-9, std::string(selector) + " accumulators differ");
    o.Check(fewer, std::string(selector) + " pruning did not save nodes");
  }
  return o;
}

// Monte Carlo unbiasedness on a one-infoset game.
Outcome Criterion7() {
  Outcome o;
  auto game = std::make_shared<testing::OneDecisionGame>(
      std::vector<double>{0.5, 0.5},
      std::vector<std::vector<double>>{{3, 1, -2}, {-1, -1, 0}});
  for (auto [sampled, exact] :
       {std::pair{Algorithm::kMccfvfp, Algorithm::kCfvfp},
        std::pair{Algorithm::kMccfrEs, Algorithm::kCfr}}) {
    SolverConfig fc;
    fc.algorithm = exact;
    SolverState full(game, fc);
    RunIteration(full);
    const std::vector<double> want = full.Find(0, "d")->cumulative;
    const int n = 10000;
    std::vector<double> s1(3, 0.0);
    std::vector<double> s2(3, 0.0);
    for (int i = 0; i < n; ++i) {
      SolverConfig sc;
      sc.algorithm = sampled;
      sc.seed = MixSeed(7, i);
      SolverState state(game, sc);
      if (sampled == Algorithm::kMccfrEs) {
        MccfrEsIteration(state, 0);
      } else {
        MccfvfpIteration(state, 0);
      }
      const auto& got = state.Find(0, "d")->cumulative;
      for (int a = 0; a < 3; ++a) {
        s1[a] += got[a];
        s2[a] += got[a] * got[a];
      }
    }
    double worst_z = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double mean = s1[a] / n;
      const double se = std::sqrt(std::max(0.0, s2[a] / n - mean * mean) / n);
      const double dev = std::abs(mean - want[a]);
      o.Check(dev <= 4.0 * se + 1e-12,
              std::string(AlgorithmName(sampled)) + " action " +
                  std::to_string(a));
      if (se > 0) worst_z = std::max(worst_z, dev / se);
    }
    o.detail << " " << AlgorithmName(sampled) << " max_z=" << worst_z;
  }
  return o;
}

// Clear-game matrices: FP close to RM.
Outcome Criterion8() {
  Outcome o;
  for (bool boosted : {true, false}) {
    double rm_sum = 0.0;
    double fp_sum = 0.0;
    const int trials = 30;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = MixSeed(808, t);
      const MatrixGame g = boosted ? GenBoostedMatrix(100, 100, 10, 5.0, seed)
                                   : GenRandomMatrix(100, 100, seed);
      Rng r1(MixSeed(seed, 1));
      Rng r2(MixSeed(seed, 2));
      rm_sum += SelfPlay(g, LearnerKind::kRegretMatching, 10000, 10000, r1)
                    .trace.back()
                    .exploitability;
      fp_sum += SelfPlay(g, LearnerKind::kFictitiousPlay, 10000, 10000, r2)
                    .trace.back()
                    .exploitability;
    }
    const double rm = rm_sum / trials;
    const double fp = fp_sum / trials;
    o.detail << (boosted ? " boosted" : " unboosted") << ": rm=" << rm
             << " fp=" << fp << " ratio=" << fp / rm;
    if (boosted) o.Check(fp <= 1.5 * rm, "fp above 1.5x rm");
  }
  return o;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string Quote(const std::string& s) { return "'" + s + "'"; }

// Byte-identical CLI reruns.
Outcome Criterion9() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "cfvfp_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream cfg(root / "exp.cfg");
    cfg << "game = leduc:x=3,y=1,z=1\ntrials = 4\nbudget = nodes=200000\n"
           "cadence = nodes=50000\nseed = 99\nthreads = 2\n"
           "checkpoints = true\n[solver es]\nalgorithm = mccfr-es\n"
           "[solver fp]\nalgorithm = mccfvfp\n";
  }
  const std::string cli = CFVFP_CLI_PATH;
  const std::vector<std::string> runs = {
      "solve --game kuhn:x=7,y=5,z=3 --algo cfr,cfvfp+,mccfvfp --weight t "
      "--trials 3 --budget iters=200 --cadence 50 --seed 5 --checkpoints",
      "solve --game randmat:n=30,m=30,boost=5,rows=3,seed=trial --algo rm,fp "
      "--trials 3 --budget iters=500 --cadence 100 --seed 8",
      "solve --config " + Quote((root / "exp.cfg").string()),
  };
  int compared = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / ("run" + std::to_string(i) + "_" +
                                   std::to_string(rep));
      dirs.push_back(dir);
      const std::string cmd = Quote(cli) + " " + runs[i] + " --out " +
                              Quote(dir.string()) + " > " +
                              Quote((dir.string() + ".stdout")) + " 2>&1";
      o.Check(std::system(cmd.c_str()) == 0, "run " + std::to_string(i));
    }
    o.Check(Slurp(dirs[0].string() + ".stdout") ==
                Slurp(dirs[1].string() + ".stdout"),
            "stdout " + std::to_string(i));
    for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().filename().string();
      if (name.find("_timing") != std::string::npos) continue;
      const fs::path rel = fs::relative(entry.path(), dirs[0]);
      o.Check(fs::exists(dirs[1] / rel) &&
                  Slurp(entry.path()) == Slurp(dirs[1] / rel),
              "file " + rel.string());
      ++compared;
    }
  }
  // Match replays from saved checkpoints.
  const fs::path ckpt = root / "run0_0" / "checkpoints";
  std::vector<std::string> outs;
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path out = root / ("match" + std::to_string(rep) + ".stdout");
    const std::string cmd =
        Quote(cli) + " match --game kuhn:x=7,y=5,z=3 --profile-a " +
        Quote((ckpt / "mccfvfp_trial0.ckpt").string()) + " --profile-b " +
        Quote((ckpt / "cfr_trial2.ckpt").string()) +
        " --episodes 5000 --seed 12 > " + Quote(out.string()) + " 2>&1";
    o.Check(std::system(cmd.c_str()) == 0, "match run");
    outs.push_back(Slurp(out));
  }
  o.Check(!outs[0].empty() && outs[0] == outs[1], "match output");
  o.detail << " files_compared=" << compared;
  fs::remove_all(root);
  return o;
}

}  // namespace
}  // namespace cfvfp

int main() {
  using cfvfp::Outcome;
  struct Item {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items = {
      {1, "game sizes", cfvfp::Criterion1},
      {2, "leaky-rock worked example", cfvfp::Criterion2},
      {3, "convergence on kuhn(3,1,1)", cfvfp::Criterion3},
      {4, "mccfvfp vs mccfr-es at equal nodes", cfvfp::Criterion4},
      {5, "node-colour census formulas", cfvfp::Criterion5},
      {6, "exact naive pruning", cfvfp::Criterion6},
      {7, "monte carlo unbiasedness", cfvfp::Criterion7},
      {8, "fp vs rm on clear matrices", cfvfp::Criterion8},
      {9, "cli determinism", cfvfp::Criterion9},
  };
  int failed = 0;
  for (const Item& item : items) {
    const auto start = cfvfp::Clock::now();
    Outcome o;
    try {
      o = item.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << item.id << ": "
              << item.name << " (" << cfvfp::Seconds(start) << " s)"
              << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
