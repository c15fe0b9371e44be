#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "casclab/interval_set.hpp"

namespace casclab {

using ordered_json = nlohmann::ordered_json;

// %.17g — shortest text that round-trips a double bit-exactly on this ABI.
std::string fmt_g17(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// UTF-8, header row, LF line ends. Cells are preformatted strings so callers
// control numeric formatting (fmt_g17 for doubles).
std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// dump(2) + trailing newline; ordered_json keeps insertion key order stable.
void write_json_file(const std::string& path, const ordered_json& j);

// [num, den] — endpoints are pi-rational with small components.
ordered_json rat_json(const Rat& x);
ordered_json set_json(const IntervalSet& s);                    // [[a, b], ...]
ordered_json periodic_set_json(const PeriodicIntervalSet& s);   // {period, base}

bool files_identical(const std::string& a, const std::string& b);

// Byte-compares the two directory trees; returns the relative paths that
// differ or exist on one side only (empty = identical).
std::vector<std::string> dir_diff(const std::string& a, const std::string& b);

}  // namespace casclab
