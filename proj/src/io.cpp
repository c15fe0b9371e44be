#include "casclab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casclab {

namespace fs = std::filesystem;

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("csv row width mismatch");
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  write_text_file(path, csv_text(header, rows));
}

void write_json_file(const std::string& path, const ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

ordered_json rat_json(const Rat& x) {
  return ordered_json::array({int_ll(numerator(x)), int_ll(denominator(x))});
}

ordered_json set_json(const IntervalSet& s) {
  ordered_json arr = ordered_json::array();
  for (auto& [a, b] : s.iv) arr.push_back(ordered_json::array({rat_json(a), rat_json(b)}));
  return arr;
}

ordered_json periodic_set_json(const PeriodicIntervalSet& s) {
  ordered_json j;
  j["period"] = rat_json(s.period);
  j["base"] = set_json(s.base);
  return j;
}

bool files_identical(const std::string& a, const std::string& b) {
  return read_text_file(a) == read_text_file(b);
}

std::vector<std::string> dir_diff(const std::string& a, const std::string& b) {
  auto listing = [](const std::string& root) {
    std::vector<std::string> rel;
    for (auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), root).generic_string());
    std::sort(rel.begin(), rel.end());
    return rel;
  };
  std::vector<std::string> la = listing(a), lb = listing(b), bad;
  size_t i = 0, j = 0;
  while (i < la.size() || j < lb.size()) {
    if (j == lb.size() || (i < la.size() && la[i] < lb[j])) {
      bad.push_back(la[i++]);
    } else if (i == la.size() || lb[j] < la[i]) {
      bad.push_back(lb[j++]);
    } else {
      if (!files_identical((fs::path(a) / la[i]).string(), (fs::path(b) / lb[j]).string()))
        bad.push_back(la[i]);
      ++i, ++j;
    }
  }
  return bad;
}

}  // namespace casclab
