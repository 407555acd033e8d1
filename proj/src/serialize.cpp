#include "rewardlab/serialize.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rewardlab/errors.hpp"

namespace rewardlab {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  require(!doc.is_discarded(), ErrorCode::parse, std::string("malformed JSON in ") + what);
  return doc;
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed,
                         const char* what) {
  require(doc.is_object(), ErrorCode::parse, std::string(what) + " document must be an object");
  for (const auto& [key, value] : doc.items()) {
    require(allowed.count(key) > 0, ErrorCode::parse,
            std::string("unknown key \"") + key + "\" in " + what);
  }
}

template <typename T>
T get_field(const json& doc, const char* key, const char* what) {
  require(doc.contains(key), ErrorCode::parse,
          std::string("missing key \"") + key + "\" in " + what);
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::parse, std::string("key \"") + key + "\" in " + what + " has the wrong type");
  }
}

}  // namespace

std::string mdp_to_json(const FiniteHorizonMdp& mdp) {
  json doc;
  doc["states"] = mdp.num_states;
  doc["actions"] = mdp.num_actions;
  doc["horizon"] = mdp.horizon;
  json transition = json::array();
  for (int s = 0; s < mdp.num_states; ++s) {
    json per_action = json::array();
    for (int a = 0; a < mdp.num_actions; ++a) {
      const auto row = mdp.row(s, a);
      per_action.push_back(json(std::vector<double>(row.begin(), row.end())));
    }
    transition.push_back(std::move(per_action));
  }
  doc["transition"] = std::move(transition);
  doc["reward"] = mdp.reward;
  doc["initial_dist"] = mdp.initial_dist;
  json absorbing = json::array();
  for (uint8_t flag : mdp.absorbing) absorbing.push_back(flag != 0);
  doc["absorbing"] = std::move(absorbing);
  return doc.dump(2);
}

FiniteHorizonMdp mdp_from_json(const std::string& text) {
  const json doc = parse(text, "mdp");
  reject_unknown_keys(
      doc, {"states", "actions", "horizon", "transition", "reward", "initial_dist", "absorbing"},
      "mdp");

  FiniteHorizonMdp mdp;
  mdp.num_states = get_field<int>(doc, "states", "mdp");
  mdp.num_actions = get_field<int>(doc, "actions", "mdp");
  mdp.horizon = get_field<int>(doc, "horizon", "mdp");
  mdp.reward = get_field<std::vector<double>>(doc, "reward", "mdp");
  mdp.initial_dist = get_field<std::vector<double>>(doc, "initial_dist", "mdp");
  const auto absorbing = get_field<std::vector<bool>>(doc, "absorbing", "mdp");
  mdp.absorbing.assign(absorbing.begin(), absorbing.end());

  const auto transition =
      get_field<std::vector<std::vector<std::vector<double>>>>(doc, "transition", "mdp");
  require(static_cast<int>(transition.size()) == mdp.num_states, ErrorCode::dimension_mismatch,
          "transition outer length != states");
  mdp.transition.reserve(static_cast<size_t>(mdp.num_states) * mdp.num_actions * mdp.num_states);
  for (const auto& per_action : transition) {
    require(static_cast<int>(per_action.size()) == mdp.num_actions,
            ErrorCode::dimension_mismatch, "transition action axis != actions");
    for (const auto& row : per_action) {
      require(static_cast<int>(row.size()) == mdp.num_states, ErrorCode::dimension_mismatch,
              "transition row length != states");
      mdp.transition.insert(mdp.transition.end(), row.begin(), row.end());
    }
  }
  validate(mdp);
  return mdp;
}

std::string layout_to_json(const PuddleLayout& layout) {
  json doc;
  doc["width"] = layout.width;
  doc["height"] = layout.height;
  doc["start"] = {layout.start_row, layout.start_col};
  doc["goal_column"] = layout.goal_column;
  json puddles = json::array();
  for (auto [r, c] : layout.puddle_cells) puddles.push_back({r, c});
  doc["puddles"] = std::move(puddles);
  doc["horizon"] = layout.horizon;
  doc["r_step"] = layout.r_step;
  doc["r_puddle"] = layout.r_puddle;
  doc["r_goal"] = layout.r_goal;
  return doc.dump(2);
}

PuddleLayout layout_from_json(const std::string& text) {
  const json doc = parse(text, "layout");
  reject_unknown_keys(doc,
                      {"width", "height", "start", "goal_column", "puddles", "horizon", "r_step",
                       "r_puddle", "r_goal"},
                      "layout");
  PuddleLayout layout;
  layout.width = get_field<int>(doc, "width", "layout");
  layout.height = get_field<int>(doc, "height", "layout");
  const auto start = get_field<std::vector<int>>(doc, "start", "layout");
  require(start.size() == 2, ErrorCode::parse, "layout start must be [row, col]");
  layout.start_row = start[0];
  layout.start_col = start[1];
  layout.goal_column = get_field<int>(doc, "goal_column", "layout");
  for (const auto& cell : get_field<std::vector<std::vector<int>>>(doc, "puddles", "layout")) {
    require(cell.size() == 2, ErrorCode::parse, "layout puddle cell must be [row, col]");
    layout.puddle_cells.emplace_back(cell[0], cell[1]);
  }
  layout.horizon = get_field<int>(doc, "horizon", "layout");
  layout.r_step = get_field<double>(doc, "r_step", "layout");
  layout.r_puddle = get_field<double>(doc, "r_puddle", "layout");
  layout.r_goal = get_field<double>(doc, "r_goal", "layout");
  validate(layout);
  return layout;
}

std::string surrogate_to_json(const SurrogateReward& surrogate) {
  json doc;
  doc["states"] = surrogate.num_states;
  doc["horizon"] = surrogate.horizon;
  json values = json::array();
  for (int s = 0; s < surrogate.num_states; ++s) {
    std::vector<double> row(surrogate.horizon);
    for (int t = 0; t < surrogate.horizon; ++t) row[t] = surrogate.at(s, t);
    values.push_back(json(row));
  }
  doc["values"] = std::move(values);
  return doc.dump(2);
}

SurrogateReward surrogate_from_json(const std::string& text) {
  const json doc = parse(text, "surrogate");
  reject_unknown_keys(doc, {"states", "horizon", "values"}, "surrogate");
  SurrogateReward s;
  s.num_states = get_field<int>(doc, "states", "surrogate");
  s.horizon = get_field<int>(doc, "horizon", "surrogate");
  const auto values = get_field<std::vector<std::vector<double>>>(doc, "values", "surrogate");
  require(static_cast<int>(values.size()) == s.num_states, ErrorCode::dimension_mismatch,
          "surrogate values outer length != states");
  s.values.reserve(static_cast<size_t>(s.num_states) * s.horizon);
  for (const auto& row : values) {
    require(static_cast<int>(row.size()) == s.horizon, ErrorCode::dimension_mismatch,
            "surrogate values row length != horizon");
    s.values.insert(s.values.end(), row.begin(), row.end());
  }
  return s;
}

std::string model_to_json(const LinearRewardModel& model) {
  json doc;
  doc["states"] = model.layout.num_states;
  doc["horizon"] = model.layout.horizon;
  doc["time_indexed"] = model.layout.time_indexed;
  doc["weights"] = model.weights;
  return doc.dump(2);
}

LinearRewardModel model_from_json(const std::string& text) {
  const json doc = parse(text, "model");
  reject_unknown_keys(doc, {"states", "horizon", "time_indexed", "weights"}, "model");
  LinearRewardModel model;
  model.layout.num_states = get_field<int>(doc, "states", "model");
  model.layout.horizon = get_field<int>(doc, "horizon", "model");
  model.layout.time_indexed = get_field<bool>(doc, "time_indexed", "model");
  model.weights = get_field<std::vector<double>>(doc, "weights", "model");
  require(static_cast<int>(model.weights.size()) == model.layout.dim(),
          ErrorCode::dimension_mismatch, "model weights length != layout dimension");
  return model;
}

std::string policy_to_json(const NonStationaryPolicy& policy) {
  json doc;
  doc["states"] = policy.num_states;
  doc["horizon"] = policy.horizon;
  json actions = json::array();
  for (int t = 0; t < policy.horizon; ++t) {
    std::vector<int> row(policy.num_states);
    for (int s = 0; s < policy.num_states; ++s) row[s] = policy.at(t, s);
    actions.push_back(json(row));
  }
  doc["actions"] = std::move(actions);
  return doc.dump(2);
}

NonStationaryPolicy policy_from_json(const std::string& text) {
  const json doc = parse(text, "policy");
  reject_unknown_keys(doc, {"states", "horizon", "actions"}, "policy");
  NonStationaryPolicy policy;
  policy.num_states = get_field<int>(doc, "states", "policy");
  policy.horizon = get_field<int>(doc, "horizon", "policy");
  const auto actions = get_field<std::vector<std::vector<int>>>(doc, "actions", "policy");
  require(static_cast<int>(actions.size()) == policy.horizon, ErrorCode::dimension_mismatch,
          "policy actions outer length != horizon");
  policy.actions.reserve(static_cast<size_t>(policy.horizon) * policy.num_states);
  for (const auto& row : actions) {
    require(static_cast<int>(row.size()) == policy.num_states, ErrorCode::dimension_mismatch,
            "policy actions row length != states");
    policy.actions.insert(policy.actions.end(), row.begin(), row.end());
  }
  return policy;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "config not found: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::io, "cannot open for writing: " + path);
  out << content;
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  require(ec == std::errc{}, ErrorCode::internal, "double formatting failed");
  return std::string(buffer, ptr);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

uint64_t fnv1a64(const void* data, size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t hash = 0xCBF29CE484222325ull;
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001B3ull;
  }
  return hash;
}

uint64_t surrogate_hash(const SurrogateReward& surrogate) {
  uint64_t hash = fnv1a64(&surrogate.num_states, sizeof(surrogate.num_states));
  hash ^= fnv1a64(&surrogate.horizon, sizeof(surrogate.horizon));
  if (!surrogate.values.empty()) {
    hash ^= fnv1a64(surrogate.values.data(), surrogate.values.size() * sizeof(double));
  }
  return hash;
}

}  // namespace rewardlab
