#include "rewardlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <set>
#include <vector>

#include "json.hpp"
#include "rewardlab/checks.hpp"
#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/loop.hpp"
#include "rewardlab/parallel.hpp"
#include "rewardlab/ranking.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/robustness.hpp"
#include "rewardlab/serialize.hpp"
#include "rewardlab/solver.hpp"
#include "rewardlab/surrogate.hpp"
#include "rewardlab/version.hpp"

namespace rewardlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;

std::string hex_u64(uint64_t value) {
  char buffer[19];
  std::snprintf(buffer, sizeof(buffer), "0x%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

/// Strict-key accessor for one JSON object level.
class Fields {
 public:
  Fields(const json& doc, std::string context) : doc_(doc), context_(std::move(context)) {
    require(doc.is_object(), ErrorCode::parse, context_ + " must be a JSON object");
  }

  template <typename T>
  T req(const char* key) {
    mark(key);
    require(doc_.contains(key), ErrorCode::parse,
            "missing key \"" + std::string(key) + "\" in " + context_);
    return read<T>(key);
  }

  template <typename T>
  T opt(const char* key, T fallback) {
    mark(key);
    if (!doc_.contains(key)) return fallback;
    return read<T>(key);
  }

  bool has(const char* key) {
    mark(key);
    return doc_.contains(key);
  }

  const json& raw(const char* key) {
    mark(key);
    require(doc_.contains(key), ErrorCode::parse,
            "missing key \"" + std::string(key) + "\" in " + context_);
    return doc_.at(key);
  }

  /// Call after reading every expected key; rejects anything else.
  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      require(seen_.count(key) > 0, ErrorCode::parse,
              "unknown key \"" + key + "\" in " + context_);
    }
  }

 private:
  template <typename T>
  T read(const char* key) {
    try {
      return doc_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(ErrorCode::parse,
           "key \"" + std::string(key) + "\" in " + context_ + " has the wrong type");
    }
  }
  void mark(const char* key) { seen_.insert(key); }

  const json& doc_;
  std::string context_;
  std::set<std::string> seen_;
};

struct LoadedConfig {
  json doc;
  fs::path dir;  // for resolving relative paths inside the config
  uint64_t seed = 0;
};

LoadedConfig load_config(const std::string& path, int64_t seed_override) {
  LoadedConfig cfg;
  const std::string text = read_text_file(path);
  cfg.doc = json::parse(text, nullptr, false);
  require(!cfg.doc.is_discarded(), ErrorCode::parse, "malformed JSON in config " + path);
  require(cfg.doc.is_object(), ErrorCode::parse, "config must be a JSON object");
  require(cfg.doc.contains("schema_version"), ErrorCode::parse,
          "config is missing schema_version");
  require(cfg.doc.at("schema_version").is_number_integer() &&
              cfg.doc.at("schema_version").get<int>() == kSchemaVersion,
          ErrorCode::parse, "unsupported config schema_version (expected " +
                                std::to_string(kSchemaVersion) + ")");
  cfg.dir = fs::path(path).parent_path();
  if (cfg.doc.contains("seed")) {
    require(cfg.doc.at("seed").is_number_unsigned() || cfg.doc.at("seed").is_number_integer(),
            ErrorCode::parse, "config seed must be an integer");
    cfg.seed = cfg.doc.at("seed").get<uint64_t>();
  }
  if (seed_override >= 0) cfg.seed = static_cast<uint64_t>(seed_override);
  return cfg;
}

std::string resolve_path(const LoadedConfig& cfg, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p.string();
  return (cfg.dir / p).string();
}

struct BuiltEnvironment {
  std::string kind;
  FiniteHorizonMdp mdp;
  std::optional<PuddleLayout> layout;
  std::vector<std::string> action_names;
};

BuiltEnvironment build_environment(const LoadedConfig& cfg, const json& env_doc) {
  Fields env(env_doc, "environment");
  BuiltEnvironment built;
  built.kind = env.req<std::string>("name");
  if (built.kind == "four_state") {
    built.mdp = make_four_state_mdp(env.req<double>("r_a"), env.req<double>("r_b"),
                                    env.req<double>("r_c"));
    built.action_names = {"left", "right"};
  } else if (built.kind == "chain") {
    const int n = env.req<int>("n");
    const auto rewards = env.req<std::vector<double>>("rewards");
    built.mdp = make_chain_mdp(n, rewards, env.req<int>("horizon"));
    built.action_names = {"left", "right"};
  } else if (built.kind == "puddle") {
    PuddleLayout layout;
    if (env.has("layout")) {
      layout = layout_from_json(env.raw("layout").dump());
    } else if (env.has("layout_file")) {
      layout = layout_from_json(read_text_file(resolve_path(cfg, env.req<std::string>("layout_file"))));
    } else {
      layout = canonical_puddle_layout();
    }
    built.layout = layout;
    built.mdp = make_puddle_world(layout);
    built.action_names = {"up", "down", "left", "right"};
  } else if (built.kind == "random") {
    built.mdp = make_random_mdp(env.req<int>("states"), env.req<int>("actions"),
                                env.req<int>("horizon"), env.req<uint64_t>("mdp_seed"));
  } else if (built.kind == "file") {
    built.mdp = mdp_from_json(read_text_file(resolve_path(cfg, env.req<std::string>("path"))));
  } else {
    fail(ErrorCode::parse, "unknown environment name \"" + built.kind + "\"");
  }
  env.finish();
  if (built.action_names.empty()) {
    for (int a = 0; a < built.mdp.num_actions; ++a) {
      built.action_names.push_back("a" + std::to_string(a));
    }
  }
  return built;
}

fs::path prepare_out_dir(const std::string& out_dir) {
  require(!out_dir.empty(), ErrorCode::invalid_argument, "output directory must be given");
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::io, "cannot create output directory " + out_dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const LoadedConfig& cfg,
                    int jobs) {
  json manifest;
  manifest["command"] = command;
  manifest["code_version"] = kVersion;
  manifest["seed"] = cfg.seed;
  manifest["jobs"] = jobs;
  manifest["config"] = cfg.doc;
  write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

void write_value_csv(const fs::path& path, const ValueTable& values) {
  std::string out = "t";
  for (int s = 0; s < values.num_states; ++s) out += ",s" + std::to_string(s);
  out += '\n';
  for (int t = 0; t <= values.horizon; ++t) {
    out += std::to_string(t);
    for (int s = 0; s < values.num_states; ++s) out += "," + format_double(values.at(t, s));
    out += '\n';
  }
  write_text_file(path.string(), out);
}

void write_policy_csv(const fs::path& path, const NonStationaryPolicy& policy) {
  std::string out = "t";
  for (int s = 0; s < policy.num_states; ++s) out += ",s" + std::to_string(s);
  out += '\n';
  for (int t = 0; t < policy.horizon; ++t) {
    out += std::to_string(t);
    for (int s = 0; s < policy.num_states; ++s) out += "," + std::to_string(policy.at(t, s));
    out += '\n';
  }
  write_text_file(path.string(), out);
}

int manhattan(const PuddleLayout& layout, int row, int col) {
  return std::abs(row - layout.start_row) + std::abs(col - layout.start_col);
}

/// Per-cell surrogate value at the cell's minimal reaching time (clamped to
/// the last decision step).
std::vector<std::vector<double>> min_time_heatmap(const PuddleLayout& layout,
                                                  const SurrogateReward& surrogate) {
  std::vector<std::vector<double>> heat(layout.height, std::vector<double>(layout.width, 0.0));
  for (int r = 0; r < layout.height; ++r) {
    for (int c = 0; c < layout.width; ++c) {
      const int t = std::min(manhattan(layout, r, c), surrogate.horizon - 1);
      heat[r][c] = surrogate.at(layout.cell_index(r, c), t);
    }
  }
  return heat;
}

void write_heatmap_csv(const fs::path& path, const std::vector<std::vector<double>>& heat) {
  std::string out;
  for (const auto& row : heat) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(format_double(v));
    out += csv_row(cells);
  }
  write_text_file(path.string(), out);
}

/// Greedy arrows over the heatmap: each cell points to the in-bounds neighbor
/// with the highest value (the policy of a one-step agent reading the reward
/// as a landscape). Goal cells are marked G.
void write_arrows_csv(const fs::path& path, const PuddleLayout& layout,
                      const std::vector<std::vector<double>>& heat) {
  const int dr[4] = {-1, 1, 0, 0};
  const int dc[4] = {0, 0, -1, 1};
  const char* arrow[4] = {"U", "D", "L", "R"};
  std::string out;
  for (int r = 0; r < layout.height; ++r) {
    std::vector<std::string> cells;
    for (int c = 0; c < layout.width; ++c) {
      if (layout.is_goal(c)) {
        cells.push_back("G");
        continue;
      }
      int best = -1;
      double best_value = 0.0;
      for (int a = 0; a < 4; ++a) {
        const int nr = r + dr[a], nc = c + dc[a];
        if (nr < 0 || nr >= layout.height || nc < 0 || nc >= layout.width) continue;
        if (best < 0 || heat[nr][nc] > best_value) {
          best = a;
          best_value = heat[nr][nc];
        }
      }
      cells.push_back(arrow[best]);
    }
    out += csv_row(cells);
  }
  write_text_file(path.string(), out);
}

json loop_record_json(const LoopRecord& rec) {
  json line;
  line["iteration"] = rec.iteration;
  line["total_return"] = rec.total_return;
  line["rank_accuracy"] = rec.rank_accuracy;
  line["buffer_size"] = rec.buffer_size;
  line["surrogate_hash"] = hex_u64(rec.surrogate_hash);
  return line;
}

void write_loop_jsonl(const fs::path& path, const LoopLog& log) {
  std::string out;
  for (const LoopRecord& rec : log.records) out += loop_record_json(rec).dump() + "\n";
  write_text_file(path.string(), out);
}

void write_train_jsonl(const fs::path& path, const LoopLog& log) {
  std::string out;
  for (const TrainRecord& rec : log.train_records) {
    json line;
    line["epoch"] = rec.epoch;
    line["mean_loss"] = rec.mean_loss;
    line["rank_accuracy"] = rec.rank_accuracy;
    out += line.dump() + "\n";
  }
  write_text_file(path.string(), out);
}

}  // namespace

bool run_solve(const std::string& config_path, const std::string& out_dir, int64_t seed_override,
               int jobs) {
  LoadedConfig cfg = load_config(config_path, seed_override);
  Fields fields(cfg.doc, "solve config");
  fields.opt<int>("schema_version", kSchemaVersion);
  fields.opt<uint64_t>("seed", 0);
  const double gamma = fields.req<double>("gamma");
  BuiltEnvironment env = build_environment(cfg, fields.raw("environment"));
  fields.finish();

  const fs::path dir = prepare_out_dir(out_dir);
  write_manifest(dir, "solve", cfg, jobs);

  const Solution sol = solve_optimal(env.mdp, gamma);
  write_value_csv(dir / "values.csv", sol.values);
  write_policy_csv(dir / "policy.csv", sol.policy);

  json report;
  report["gamma"] = gamma;
  report["environment"] = env.kind;
  report["total_return"] = total_return(env.mdp, sol.policy);
  json starts = json::array();
  for (int s = 0; s < env.mdp.num_states; ++s) {
    if (env.mdp.initial_dist[s] <= 0.0) continue;
    const int a = sol.policy.at(0, s);
    starts.push_back({{"state", s}, {"action", a}, {"action_name", env.action_names[a]}});
  }
  report["start_actions"] = std::move(starts);
  write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
  return true;
}

bool run_gamma_crit(const std::string& config_path, const std::string& out_dir,
                    int64_t seed_override, int jobs) {
  LoadedConfig cfg = load_config(config_path, seed_override);
  Fields fields(cfg.doc, "gamma-crit config");
  fields.opt<int>("schema_version", kSchemaVersion);
  fields.opt<uint64_t>("seed", 0);
  const double tolerance = fields.opt<double>("tolerance", 1e-9);
  std::vector<double> grid;
  if (fields.has("grid")) {
    grid = fields.raw("grid").get<std::vector<double>>();
  } else {
    grid = make_gamma_grid(fields.opt<double>("grid_step", 0.01));
  }
  BuiltEnvironment env = build_environment(cfg, fields.raw("environment"));
  fields.finish();

  const fs::path dir = prepare_out_dir(out_dir);
  write_manifest(dir, "gamma-crit", cfg, jobs);

  const GammaSweep sweep = sweep_gamma_crit(env.mdp, grid, tolerance);
  std::string table = "gamma,total_return,achieves_optimal\n";
  for (size_t i = 0; i < sweep.gammas.size(); ++i) {
    const bool good =
        std::abs(sweep.policy_total_returns[i] - sweep.optimal_total_return) <= tolerance;
    table += csv_row({format_double(sweep.gammas[i]),
                      format_double(sweep.policy_total_returns[i]), good ? "1" : "0"});
  }
  write_text_file((dir / "sweep.csv").string(), table);

  json report;
  report["environment"] = env.kind;
  report["gamma_crit"] = sweep.gamma_crit;
  report["optimal_total_return"] = sweep.optimal_total_return;
  write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
  return true;
}

bool run_tweak(const std::string& config_path, const std::string& out_dir, int64_t seed_override,
               int jobs) {
  LoadedConfig cfg = load_config(config_path, seed_override);
  Fields fields(cfg.doc, "tweak config");
  fields.opt<int>("schema_version", kSchemaVersion);
  fields.opt<uint64_t>("seed", 0);
  const auto gammas = fields.req<std::vector<double>>("gammas");
  require(!gammas.empty(), ErrorCode::parse, "tweak config needs at least one gamma");

  LoopConfig base;
  base.iterations = fields.opt<int>("iterations", 400);
  base.exploration_eps = fields.opt<double>("exploration_eps", 0.5);
  base.eps_decay = fields.opt<double>("eps_decay", 0.995);
  base.buffer_capacity = fields.opt<int>("buffer_capacity", 256);
  base.reward_train_epochs_per_iter = fields.opt<int>("epochs_per_iter", 25);
  base.train.batch_size = fields.opt<int>("batch_size", 24);
  base.train.pairs_per_batch = fields.opt<int>("pairs_per_batch", 48);
  base.train.learning_rate = fields.opt<double>("learning_rate", 0.3);
  base.ranking.time_indexed = fields.opt<bool>("time_indexed", true);
  base.ranking.length_cap = fields.opt<int>("length_cap", 0);
  base.ranking.l2 = fields.opt<double>("l2", 0.0);
  const std::string pair_mode = fields.opt<std::string>("pair_mode", "any_offsets");
  require(pair_mode == "any_offsets" || pair_mode == "equal_length", ErrorCode::parse,
          "pair_mode must be any_offsets or equal_length");
  base.ranking.pair_mode =
      pair_mode == "any_offsets" ? PairMode::any_offsets : PairMode::equal_length;
  const std::string solver = fields.opt<std::string>("policy_solver", "exact");
  require(solver == "exact" || solver == "q_learning", ErrorCode::parse,
          "policy_solver must be exact or q_learning");
  base.policy_solver = solver == "exact" ? PolicySolver::exact_backward_induction
                                         : PolicySolver::tabular_q_learning;
  BuiltEnvironment env = build_environment(cfg, fields.raw("environment"));
  fields.finish();

  const fs::path dir = prepare_out_dir(out_dir);
  write_manifest(dir, "tweak", cfg, jobs);

  struct PerGamma {
    double gamma = 0.0;
    LoopResult tweaked;
    BaselineResult baseline;
  };
  std::vector<PerGamma> runs(gammas.size());
  parallel_for(static_cast<int>(gammas.size()), jobs, [&](int i) {
    LoopConfig config = base;
    config.gamma = gammas[i];
    config.seed = derive_seed(cfg.seed, 60, i);
    runs[i].gamma = gammas[i];
    runs[i].tweaked = run(env.mdp, config);
    config.seed = derive_seed(cfg.seed, 61, i);
    runs[i].baseline = run_baseline(env.mdp, config);
  });

  json report;
  report["environment"] = env.kind;
  json results = json::array();
  for (const PerGamma& pg : runs) {
    const std::string tag = "gamma_" + format_double(pg.gamma);
    std::string curves = "iteration,tweaked_return,baseline_return,rank_accuracy,buffer_size\n";
    for (size_t i = 0; i < pg.tweaked.log.records.size(); ++i) {
      const LoopRecord& tw = pg.tweaked.log.records[i];
      const LoopRecord& bl = pg.baseline.log.records[i];
      curves += csv_row({std::to_string(tw.iteration), format_double(tw.total_return),
                         format_double(bl.total_return), format_double(tw.rank_accuracy),
                         std::to_string(tw.buffer_size)});
    }
    write_text_file((dir / ("curves_" + tag + ".csv")).string(), curves);
    write_loop_jsonl(dir / ("loop_" + tag + ".jsonl"), pg.tweaked.log);
    write_loop_jsonl(dir / ("baseline_" + tag + ".jsonl"), pg.baseline.log);
    write_train_jsonl(dir / ("train_" + tag + ".jsonl"), pg.tweaked.log);
    write_text_file((dir / ("model_" + tag + ".json")).string(),
                    model_to_json(pg.tweaked.model) + "\n");
    write_text_file((dir / ("policy_" + tag + ".json")).string(),
                    policy_to_json(pg.tweaked.policy) + "\n");

    if (env.layout) {
      const SurrogateReward reference =
          make_value_correction_surrogate(env.mdp, 1.0, pg.gamma);
      write_heatmap_csv(dir / ("heatmap_reference_" + tag + ".csv"),
                        min_time_heatmap(*env.layout, reference));
      write_arrows_csv(dir / ("arrows_" + tag + ".csv"), *env.layout,
                       min_time_heatmap(*env.layout, reference));
      write_text_file((dir / ("surrogate_reference_" + tag + ".json")).string(),
                      surrogate_to_json(reference) + "\n");
      const SurrogateReward learned = to_surrogate(pg.tweaked.model);
      write_heatmap_csv(dir / ("heatmap_learned_" + tag + ".csv"),
                        min_time_heatmap(*env.layout, learned));
    }

    const double tweaked_final = total_return(env.mdp, pg.tweaked.policy);
    const double baseline_final = total_return(env.mdp, pg.baseline.policy);
    json entry;
    entry["gamma"] = pg.gamma;
    entry["tweaked_total_return"] = tweaked_final;
    entry["baseline_total_return"] = baseline_final;
    entry["iterations"] = base.iterations;
    entry["final_rank_accuracy"] =
        pg.tweaked.log.records.empty() ? 0.0 : pg.tweaked.log.records.back().rank_accuracy;
    results.push_back(std::move(entry));
  }
  report["results"] = std::move(results);
  write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
  return true;
}

bool run_robustness(const std::string& config_path, const std::string& out_dir,
                    int64_t seed_override, int jobs) {
  LoadedConfig cfg = load_config(config_path, seed_override);
  Fields fields(cfg.doc, "robustness config");
  fields.opt<int>("schema_version", kSchemaVersion);
  fields.opt<uint64_t>("seed", 0);
  const int trials = fields.opt<int>("trials", 1000);
  const auto modes = fields.opt<std::vector<std::string>>(
      "modes", {"uniform", "end_concentrated"});
  const auto gammas = fields.opt<std::vector<double>>("gammas", {0.5, 0.9, 0.99});
  const bool use_surrogate = fields.opt<bool>("use_surrogate", false);
  const bool paired = fields.opt<bool>("paired_comparison", true);
  const int paired_trials = fields.opt<int>("paired_trials", 200);
  fields.finish();

  const fs::path dir = prepare_out_dir(out_dir);
  write_manifest(dir, "robustness", cfg, jobs);

  bool ok = true;
  std::string lines;
  std::string summary = "mode,trials,violations,mean_gap,min_slack,max_ratio_error\n";
  json report;
  json mode_reports = json::array();

  for (const std::string& mode_name : modes) {
    require(mode_name == "uniform" || mode_name == "end_concentrated", ErrorCode::parse,
            "mode must be uniform or end_concentrated");
    TrialOptions options;
    options.trials = trials;
    options.mode = mode_name == "uniform" ? PerturbationMode::uniform_all_states
                                          : PerturbationMode::end_concentrated;
    options.gammas = gammas;
    options.use_surrogate = use_surrogate;
    options.seed = derive_seed(cfg.seed, mode_name == "uniform" ? 70 : 71, 0);
    options.jobs = jobs;

    const std::vector<TrialRecord> records = run_robustness_trials(options);
    const TrialSummary s = summarize_trials(records);
    ok = ok && s.violations == 0;

    for (const TrialRecord& rec : records) {
      json line;
      line["trial"] = rec.trial;
      line["mode"] = mode_name;
      line["gamma"] = rec.gamma;
      line["epsilon_p"] = rec.epsilon_p;
      line["last_layers"] = rec.last_layers;
      line["gap"] = rec.gap;
      line["bound"] = rec.bound;
      line["slack"] = rec.bound - rec.gap;
      line["holds"] = rec.holds;
      lines += line.dump() + "\n";
    }
    summary += csv_row({mode_name, std::to_string(s.trials), std::to_string(s.violations),
                        format_double(s.mean_gap), format_double(s.min_slack),
                        format_double(s.max_ratio_error)});
    json entry;
    entry["mode"] = mode_name;
    entry["trials"] = s.trials;
    entry["violations"] = s.violations;
    entry["mean_gap"] = s.mean_gap;
    entry["min_slack"] = s.min_slack;
    entry["max_ratio_error"] = s.max_ratio_error;
    mode_reports.push_back(std::move(entry));
  }

  report["modes"] = std::move(mode_reports);
  if (paired) {
    const PairedComparison cmp =
        run_paired_mode_comparison(paired_trials, derive_seed(cfg.seed, 72, 0), jobs);
    report["paired_comparison"] = {{"trials", cmp.trials},
                                   {"mean_gap_uniform", cmp.mean_gap_uniform},
                                   {"mean_gap_end_concentrated", cmp.mean_gap_end}};
    ok = ok && cmp.mean_gap_end < cmp.mean_gap_uniform;
  }
  report["all_bounds_hold"] = ok;

  write_text_file((dir / "trials.jsonl").string(), lines);
  write_text_file((dir / "summary.csv").string(), summary);
  write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
  return ok;
}

bool run_theorems(const std::string& config_path, const std::string& out_dir,
                  int64_t seed_override, int jobs) {
  LoadedConfig cfg = load_config(config_path, seed_override);
  Fields fields(cfg.doc, "theorems config");
  fields.opt<int>("schema_version", kSchemaVersion);
  fields.opt<uint64_t>("seed", 0);
  const int random_mdps = fields.opt<int>("random_mdps", 10);
  const int trajectories = fields.opt<int>("trajectories_per_env", 200);
  const int reward_vectors = fields.opt<int>("reward_vectors", 1000);
  const bool wrong_sign = fields.opt<bool>("wrong_sign_correction", false);
  fields.finish();

  const fs::path dir = prepare_out_dir(out_dir);
  write_manifest(dir, "theorems", cfg, jobs);

  const std::vector<NamedMdp> envs = check_environments(random_mdps, derive_seed(cfg.seed, 80, 0));
  std::vector<CheckResult> results(envs.size());

  RecoveryCheckOptions recovery;
  recovery.wrong_sign = wrong_sign;
  parallel_for(static_cast<int>(envs.size()), jobs,
               [&](int i) { results[i] = check_value_recovery_grid(envs[i], recovery); });

  OrderCheckOptions order;
  order.trajectories = trajectories;
  order.seed = derive_seed(cfg.seed, 81, 0);
  for (size_t i = 0; i < 3 && i < envs.size(); ++i) {
    results.push_back(check_return_identity_and_order(envs[i], order));
  }

  results.push_back(check_gamma_zero_impossibility(reward_vectors, derive_seed(cfg.seed, 82, 0)));

  ScaleCheckOptions scale;
  scale.seed = derive_seed(cfg.seed, 83, 0);
  results.push_back(check_scale_invariance_sweep(scale));

  bool ok = true;
  std::string table = "check,status,detail\n";
  json report_checks = json::array();
  for (const CheckResult& result : results) {
    ok = ok && result.passed;
    table += csv_row({result.name, result.passed ? "PASS" : "FAIL", "\"" + result.detail + "\""});
    report_checks.push_back(
        {{"name", result.name}, {"passed", result.passed}, {"detail", result.detail}});
  }
  json report;
  report["passed"] = ok;
  report["checks"] = std::move(report_checks);
  write_text_file((dir / "checks.csv").string(), table);
  write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
  return ok;
}

bool run_command(const std::string& command, const std::string& config_path,
                 const std::string& out_dir, int64_t seed_override, int jobs) {
  if (command == "solve") return run_solve(config_path, out_dir, seed_override, jobs);
  if (command == "gamma-crit") return run_gamma_crit(config_path, out_dir, seed_override, jobs);
  if (command == "tweak") return run_tweak(config_path, out_dir, seed_override, jobs);
  if (command == "robustness") return run_robustness(config_path, out_dir, seed_override, jobs);
  if (command == "theorems") return run_theorems(config_path, out_dir, seed_override, jobs);
  fail(ErrorCode::invalid_argument, "unknown command \"" + command + "\"");
}

}  // namespace rewardlab
