#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rewardlab/environments.hpp"
#include "rewardlab/mdp.hpp"
#include "rewardlab/ranking.hpp"

namespace rewardlab {

/// All on-disk documents are JSON. Numbers are emitted with the shortest
/// representation that parses back to the identical double, so round trips
/// are lossless. Parsers reject unknown keys.

std::string mdp_to_json(const FiniteHorizonMdp& mdp);
FiniteHorizonMdp mdp_from_json(const std::string& text);

std::string layout_to_json(const PuddleLayout& layout);
PuddleLayout layout_from_json(const std::string& text);

std::string surrogate_to_json(const SurrogateReward& surrogate);
SurrogateReward surrogate_from_json(const std::string& text);

std::string model_to_json(const LinearRewardModel& model);
LinearRewardModel model_from_json(const std::string& text);

std::string policy_to_json(const NonStationaryPolicy& policy);
NonStationaryPolicy policy_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Shortest round-trip decimal form of a double (used everywhere a number is
/// printed, so artifacts are byte-stable).
std::string format_double(double value);

/// One CSV row from already-formatted cells.
std::string csv_row(const std::vector<std::string>& cells);

/// FNV-1a over raw bytes.
uint64_t fnv1a64(const void* data, size_t size);

/// Content hash of a surrogate table (dimensions plus raw weight bytes).
uint64_t surrogate_hash(const SurrogateReward& surrogate);

}  // namespace rewardlab
