#ifndef WFLO_TESTS_FIXTURES_HPP_
#define WFLO_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wflo/grid.hpp"

namespace fixtures {

inline std::filesystem::path path(const std::string& name) {
  return std::filesystem::path(WFLO_FIXTURE_DIR) / name;
}

inline std::vector<std::string> lines(const std::string& name) {
  std::ifstream f(path(name));
  if (!f) throw std::runtime_error("missing fixture " + name);
  std::vector<std::string> out;
  for (std::string s; std::getline(f, s);) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

// The 79 optimal 4x4 layouts, ascending.
inline std::vector<wflo::Layout> optimal_lgrid4() {
  std::vector<wflo::Layout> out;
  for (const auto& s : lines("optimal_lgrid4.txt")) out.push_back(wflo::Layout::from_string(s));
  return out;
}

inline std::vector<double> numbers(const std::string& name) {
  std::vector<double> out;
  for (const auto& s : lines(name)) out.push_back(std::stod(s));
  return out;
}

}  // namespace fixtures

#endif  // WFLO_TESTS_FIXTURES_HPP_
