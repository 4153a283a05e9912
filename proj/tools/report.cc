// `salab report`: mean and standard error of the value column, grouped by
// every column other than seed, value and value_exact.

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "commands.h"

namespace salab::cli {
namespace {

std::vector<std::string> split_row(const std::string& line, const std::string& where) {
  if (line.find('"') != std::string::npos) throw UsageError(where + ": quoted fields are not supported");
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_value(const std::string& text, const std::string& where) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) throw UsageError(where + ": bad value '" + text + "'");
  return v;
}

struct Group {
  std::vector<std::string> key;
  long count = 0;
  double sum = 0;
  std::vector<double> values;
};

}  // namespace

int cmd_report(const Config& cfg, Context& ctx) {
  std::vector<std::string> header;
  std::vector<std::size_t> key_cols;
  std::size_t value_col = 0;
  std::vector<Group> groups;
  std::map<std::vector<std::string>, std::size_t> index;

  for (const auto& path : cfg.get_string_list("inputs")) {
    std::istringstream in(read_file(path));
    std::string line;
    long line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::string where = path + ":" + std::to_string(line_no);
      auto cells = split_row(line, where);
      if (!seen_header) {
        seen_header = true;
        if (header.empty()) {
          header = cells;
          bool has_value = false;
          for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == "value") {
              value_col = c;
              has_value = true;
            } else if (header[c] != "seed" && header[c] != "value_exact") {
              key_cols.push_back(c);
            }
          }
          if (!has_value) throw UsageError(where + ": no 'value' column");
        } else if (cells != header) {
          throw UsageError(where + ": header differs from the first input");
        }
        continue;
      }
      if (cells.size() != header.size())
        throw UsageError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                         std::to_string(cells.size()));
      double v = parse_value(cells[value_col], where);
      std::vector<std::string> key;
      for (auto c : key_cols) key.push_back(cells[c]);
      auto [it, fresh] = index.try_emplace(key, groups.size());
      if (fresh) groups.push_back(Group{key, 0, 0, {}});
      auto& g = groups[it->second];
      ++g.count;
      g.sum += v;
      g.values.push_back(v);
    }
    ctx.log->info("read {} ({} lines)", path, line_no);
  }

  std::vector<std::string> out_cols;
  for (auto c : key_cols) out_cols.push_back(header[c]);
  for (const char* c : {"count", "mean", "stderr"}) out_cols.emplace_back(c);

  auto stats = [](const Group& g) {
    double mean = g.sum / static_cast<double>(g.count);
    double se = 0;
    if (g.count > 1) {
      double ss = 0;
      for (double v : g.values) ss += (v - mean) * (v - mean);
      se = std::sqrt(ss / static_cast<double>(g.count - 1)) / std::sqrt(static_cast<double>(g.count));
    }
    return std::pair{mean, se};
  };

  if (cfg.get_string("format") == "json") {
    Json out = Json::array();
    for (const auto& g : groups) {
      auto [mean, se] = stats(g);
      Json row;
      for (std::size_t i = 0; i < g.key.size(); ++i) row[out_cols[i]] = g.key[i];
      row["count"] = g.count;
      row["mean"] = mean;
      row["stderr"] = se;
      out.push_back(std::move(row));
    }
    emit(cfg, out.dump(2) + "\n");
    return kOk;
  }

  std::string csv;
  for (std::size_t i = 0; i < out_cols.size(); ++i) csv += (i ? "," : "") + out_cols[i];
  csv += "\n";
  for (const auto& g : groups) {
    auto [mean, se] = stats(g);
    for (const auto& cell : g.key) csv += cell + ",";
    csv += std::to_string(g.count) + "," + format_double(mean) + "," + format_double(se) + "\n";
  }
  emit(cfg, csv);
  return kOk;
}

}  // namespace salab::cli
