#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vmcast {

/// One row of the CQI feedback table: 4G CQI index, optional 5G index,
/// modulation order (2/4/6), code rate x1024, SINR decision threshold in dB
/// and spectral efficiency in bits per symbol. Index 0 is "no transmission".
struct McsEntry {
  int cqi4g = 0;
  std::optional<int> cqi5g;
  int modulation_order = 0;
  int code_rate_x1024 = 0;
  double sinr_threshold_db = 0.0;
  double efficiency = 0.0;

  bool operator==(const McsEntry&) const = default;
};

class McsTable {
 public:
  /// The built-in 16-row feedback table (BLER 0.1 operating points).
  static const McsTable& builtin();

  /// Load from CSV with columns
  /// cqi4g,cqi5g,modulation,code_rate_x1024,sinr_threshold_db,efficiency.
  /// Throws ConfigError on malformed input or invariant violations.
  static McsTable load_csv(const std::string& path);

  const std::vector<McsEntry>& entries() const { return entries_; }
  const McsEntry& entry(int cqi) const { return entries_.at(cqi); }

  double efficiency(int cqi) const { return entries_.at(cqi).efficiency; }
  double threshold_db(int cqi) const { return entries_.at(cqi).sinr_threshold_db; }

  /// Piecewise-linear interpolation over rows 1..15, clamped at the ends.
  /// Needed by the relaxed solver iterates which hold fractional CQIs.
  double efficiency_interp(double cqi) const;
  double threshold_db_interp(double cqi) const;

  bool operator==(const McsTable&) const = default;

 private:
  explicit McsTable(std::vector<McsEntry> e);
  std::vector<McsEntry> entries_;
};

/// Largest CQI whose threshold is <= sinr_db (inclusive at the boundary);
/// 0 when even CQI 1 is out of reach.
int sinr_to_cqi(double sinr_db, const McsTable& table = McsTable::builtin());

}  // namespace vmcast
