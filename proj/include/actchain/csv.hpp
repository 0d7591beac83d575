#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace actchain::csv {

inline std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct Reader {
  std::ifstream in;
  std::vector<std::string> header;

  explicit Reader(const std::string& path) : in(path) {
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      header = split_row(line);
    }
  }

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }

  // Calls fn for each data row; returns number of rows visited.
  std::size_t for_each(const std::function<void(const std::vector<std::string>&)>& fn) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fn(split_row(line));
      ++n;
    }
    return n;
  }
};

}  // namespace actchain::csv
