#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmdg/harness/run.hpp"

namespace mmdg::harness {

/// Numeric table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) {
    if (row.size() != header.size()) throw std::invalid_argument("Table::add: row width != header width");
    rows.push_back(std::move(row));
  }
};

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (size_t c = 0; c < t.header.size(); ++c) os << (c ? "," : "") << t.header[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

inline void write_csv(const std::string& path, const Table& t) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(f, t);
}

inline Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_csv: missing header");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    for (std::string cell; std::getline(rs, cell, ',');) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str()) throw std::runtime_error("read_csv: bad number '" + cell + "'");
    }
    t.add(std::move(row));
  }
  return t;
}

inline Table read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(f);
}

inline Table profile_table(const RunOutput& r) {
  Table t{{"x", "rho", "u", "T", "p", "Qeps"}, {}};
  for (const auto& p : r.profile) t.add({p.x, p.rho, p.u, p.T, p.p, p.q_eps});
  return t;
}

inline Table conservation_table(const RunOutput& r) {
  Table t{{"t", "c0", "c1", "c2"}, {}};
  for (const auto& s : r.conservation) t.add({s.t, s.defect[0], s.defect[1], s.defect[2]});
  return t;
}

inline Table probe_table(const ProbeSlice& p) {
  Table t{{"v", "g", "f"}, {}};
  for (size_t j = 0; j < p.v.size(); ++j) t.add({p.v[j], p.g[j], p.f[j]});
  return t;
}

/// Writes <stem>.csv, <stem>_conservation.csv and <stem>_probe<k>.csv.
inline std::vector<std::string> write_run(const std::string& stem, const RunOutput& r) {
  std::vector<std::string> written;
  write_csv(stem + ".csv", profile_table(r));
  written.push_back(stem + ".csv");
  write_csv(stem + "_conservation.csv", conservation_table(r));
  written.push_back(stem + "_conservation.csv");
  for (size_t k = 0; k < r.probes.size(); ++k) {
    const std::string path = stem + "_probe" + std::to_string(k) + ".csv";
    write_csv(path, probe_table(r.probes[k]));
    written.push_back(path);
  }
  return written;
}

}  // namespace mmdg::harness
