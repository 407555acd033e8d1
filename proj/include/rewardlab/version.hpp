#pragma once

namespace rewardlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rewardlab
