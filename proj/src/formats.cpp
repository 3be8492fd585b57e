#include "dpt/formats.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpt {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

PartialBooleanFunction parse_truth_table(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty() || lines[0].rfind("n=", 0) != 0) throw std::invalid_argument("missing n=<int> header");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(lines[0].substr(2), &used);
    if (used != lines[0].size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad header: " + lines[0]);
  }
  if (n < 0 || n > 20) throw std::invalid_argument("variable count out of range");
  std::vector<int8_t> values(std::size_t{1} << n, 0);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string& line = lines[l];
    auto sp = line.find(' ');
    if (sp == std::string::npos) throw std::invalid_argument("bad line: " + line);
    std::string bits = line.substr(0, sp), val = line.substr(sp + 1);
    if (static_cast<int>(bits.size()) != n) throw std::invalid_argument("bitstring length mismatch: " + line);
    std::uint64_t x = 0;
    for (int i = 0; i < n; ++i) {
      if (bits[i] == '1') x |= std::uint64_t{1} << i;
      else if (bits[i] != '0') throw std::invalid_argument("bad bitstring: " + line);
    }
    int v;
    if (val == "1") v = 1;
    else if (val == "-1") v = -1;
    else throw std::invalid_argument("value must be -1 or 1: " + line);
    if (values[x] != 0) throw std::invalid_argument("duplicate point: " + line);
    values[x] = static_cast<int8_t>(v);
  }
  return PartialBooleanFunction(n, std::move(values));
}

std::string format_truth_table(const PartialBooleanFunction& f) {
  std::string out = "n=" + std::to_string(f.num_vars()) + "\n";
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (!f.defined(x)) continue;
    for (int i = 0; i < f.num_vars(); ++i) out += ((x >> i) & 1) ? '1' : '0';
    out += f.value(x) > 0 ? " 1\n" : " -1\n";
  }
  return out;
}

PartialSignMatrix parse_matrix_csv(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw std::invalid_argument("empty matrix");
  std::vector<int8_t> entries;
  int cols = -1;
  for (auto& line : lines) {
    std::istringstream in(line);
    std::string cell;
    int count = 0;
    while (std::getline(in, cell, ',')) {
      if (cell == "1") entries.push_back(1);
      else if (cell == "-1") entries.push_back(-1);
      else if (cell == "*") entries.push_back(0);
      else throw std::invalid_argument("bad matrix cell: '" + cell + "'");
      ++count;
    }
    if (!line.empty() && line.back() == ',') throw std::invalid_argument("trailing comma");
    if (cols >= 0 && count != cols) throw std::invalid_argument("ragged matrix rows");
    cols = count;
  }
  return PartialSignMatrix(static_cast<int>(lines.size()), cols, std::move(entries));
}

std::string format_matrix_csv(const PartialSignMatrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      int v = m.at(i, j);
      out += v == 0 ? "*" : (v > 0 ? "1" : "-1");
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dpt
