#pragma once

#include "vmcast/model.hpp"
#include "vmcast/util.hpp"

namespace vmcast {

/// Attach each vehicle to its best-SINR BS, ties to the lowest BS index.
Matrix<std::uint8_t> initial_association(const ChannelRealization& channel);

struct RefineStats {
  int moves = 0;
  int rounds = 0;
};

/// Iteratively move each BS's worst-SINR vehicle to another BS when doing so
/// strictly raises the source's worst SINR and leaves the target's worst
/// unchanged (the moved vehicle's SINR there exceeds the target's current
/// worst by more than 1e-9 dB). A move never empties its source BS. Rounds
/// scan BSs in ascending index until a full round makes no move.
Matrix<std::uint8_t> refine_association(const Matrix<std::uint8_t>& y,
                                        const ChannelRealization& channel,
                                        RefineStats* stats = nullptr);

}  // namespace vmcast
