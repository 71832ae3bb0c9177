#include "vmcast/mcs.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "vmcast/util.hpp"

namespace vmcast {

namespace {

std::vector<McsEntry> builtin_rows() {
  const double ninf = -std::numeric_limits<double>::infinity();
  return {
      {0, std::nullopt, 0, 0, ninf, 0.0},
      {1, std::nullopt, 2, 78, -9.478, 0.1523},
      {2, 0, 2, 120, -6.658, 0.2344},
      {3, 2, 2, 193, -4.098, 0.3770},
      {4, 4, 2, 308, -1.798, 0.6016},
      {5, 6, 2, 449, 0.399, 0.8770},
      {6, 8, 2, 602, 2.424, 1.1758},
      {7, 11, 4, 378, 4.489, 1.4766},
      {8, 13, 4, 490, 6.367, 1.9141},
      {9, 15, 4, 616, 8.456, 2.4063},
      {10, 18, 6, 466, 10.266, 2.7305},
      {11, 20, 6, 567, 12.218, 3.3223},
      {12, 22, 6, 666, 14.122, 3.9023},
      {13, 24, 6, 772, 15.849, 4.5234},
      {14, 26, 6, 873, 17.786, 5.1152},
      {15, 28, 6, 948, 19.809, 5.5547},
  };
}

void check_invariants(const std::vector<McsEntry>& rows) {
  if (rows.size() != 16) throw ConfigError("MCS table must have 16 rows");
  for (int i = 0; i < 16; ++i) {
    if (rows[i].cqi4g != i) throw ConfigError("MCS rows must be sorted by cqi4g");
  }
  if (rows[0].efficiency != 0.0) throw ConfigError("MCS row 0 must have zero efficiency");
  for (int i = 2; i < 16; ++i) {
    if (!(rows[i].sinr_threshold_db > rows[i - 1].sinr_threshold_db))
      throw ConfigError("MCS thresholds must be strictly increasing");
    if (!(rows[i].efficiency > rows[i - 1].efficiency))
      throw ConfigError("MCS efficiencies must be strictly increasing");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

McsTable::McsTable(std::vector<McsEntry> e) : entries_(std::move(e)) {
  check_invariants(entries_);
}

const McsTable& McsTable::builtin() {
  static const McsTable table{builtin_rows()};
  return table;
}

McsTable McsTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open MCS table: " + path);
  std::vector<McsEntry> rows;
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!header_skipped) {
      header_skipped = true;
      if (line.find("cqi4g") != std::string::npos) continue;  // header row
    }
    auto f = split_csv_line(line);
    if (f.size() != 6) throw ConfigError("MCS CSV row needs 6 columns: " + line);
    McsEntry e;
    e.cqi4g = std::stoi(f[0]);
    if (!f[1].empty()) e.cqi5g = std::stoi(f[1]);
    e.modulation_order = std::stoi(f[2]);
    e.code_rate_x1024 = std::stoi(f[3]);
    e.sinr_threshold_db =
        (f[4] == "-inf") ? -std::numeric_limits<double>::infinity() : std::stod(f[4]);
    e.efficiency = std::stod(f[5]);
    rows.push_back(e);
  }
  return McsTable{std::move(rows)};
}

double McsTable::efficiency_interp(double cqi) const {
  if (cqi <= 1.0) return entries_[1].efficiency;
  if (cqi >= 15.0) return entries_[15].efficiency;
  int lo = static_cast<int>(std::floor(cqi));
  double t = cqi - lo;
  return entries_[lo].efficiency * (1.0 - t) + entries_[lo + 1].efficiency * t;
}

double McsTable::threshold_db_interp(double cqi) const {
  if (cqi <= 1.0) return entries_[1].sinr_threshold_db;
  if (cqi >= 15.0) return entries_[15].sinr_threshold_db;
  int lo = static_cast<int>(std::floor(cqi));
  double t = cqi - lo;
  return entries_[lo].sinr_threshold_db * (1.0 - t) + entries_[lo + 1].sinr_threshold_db * t;
}

int sinr_to_cqi(double sinr_db, const McsTable& table) {
  int best = 0;
  for (int q = 1; q <= 15; ++q) {
    if (sinr_db >= table.threshold_db(q)) best = q;
  }
  return best;
}

}  // namespace vmcast
