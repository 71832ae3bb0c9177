#include "vmcast/association.hpp"

#include <limits>
#include <vector>

namespace vmcast {

namespace {
constexpr double kSinrTolDb = 1e-9;
}

Matrix<std::uint8_t> initial_association(const ChannelRealization& channel) {
  const std::size_t N = channel.sinr_db.rows();
  const std::size_t V = channel.sinr_db.cols();
  Matrix<std::uint8_t> y(N, V, 0);
  for (std::size_t v = 0; v < V; ++v) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < N; ++n) {
      if (channel.sinr_db(n, v) > channel.sinr_db(best, v)) best = n;
    }
    y(best, v) = 1;
  }
  return y;
}

Matrix<std::uint8_t> refine_association(const Matrix<std::uint8_t>& y_in,
                                        const ChannelRealization& channel, RefineStats* stats) {
  const std::size_t N = channel.sinr_db.rows();
  const std::size_t V = channel.sinr_db.cols();
  Matrix<std::uint8_t> y = y_in;

  std::vector<std::size_t> serving(V, 0);
  for (std::size_t v = 0; v < V; ++v) {
    for (std::size_t n = 0; n < N; ++n) {
      if (y(n, v)) serving[v] = n;
    }
  }

  auto worst_of = [&](std::size_t n, std::size_t skip_v, bool use_skip) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < V; ++v) {
      if (serving[v] != n || (use_skip && v == skip_v)) continue;
      worst = std::min(worst, channel.sinr_db(n, v));
    }
    return worst;  // +inf when the set is empty
  };

  int moves = 0;
  int rounds = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    ++rounds;
    for (std::size_t n = 0; n < N; ++n) {
      // the BS's worst vehicle, ties to the lowest vehicle index
      std::size_t vstar = V;
      std::size_t members = 0;
      for (std::size_t v = 0; v < V; ++v) {
        if (serving[v] != n) continue;
        ++members;
        if (vstar == V || channel.sinr_db(n, v) < channel.sinr_db(n, vstar)) vstar = v;
      }
      if (members <= 1) continue;  // a move may not empty its source

      double worst_before = channel.sinr_db(n, vstar);
      double worst_after = worst_of(n, vstar, true);
      if (!(worst_after - worst_before > 0.0)) continue;

      for (std::size_t n2 = 0; n2 < N; ++n2) {
        if (n2 == n) continue;
        double target_worst = worst_of(n2, 0, false);
        if (target_worst == std::numeric_limits<double>::infinity()) continue;  // empty BS
        if (channel.sinr_db(n2, vstar) - target_worst > kSinrTolDb) {
          serving[vstar] = n2;
          y(n, vstar) = 0;
          y(n2, vstar) = 1;
          ++moves;
          moved = true;
          break;
        }
      }
    }
  }
  if (stats) {
    stats->moves = moves;
    stats->rounds = rounds;
  }
  return y;
}

}  // namespace vmcast
