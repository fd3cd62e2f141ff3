#include "wflo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wflo {

GridGeometry::GridGeometry(int l_grid) : side_(l_grid) {
  if (l_grid <= 0) {
    throw std::invalid_argument("grid side length must be positive");
  }
}

SiteCoord GridGeometry::coords(int index) const {
  if (index < 0 || index >= sites()) {
    throw std::out_of_range("site index " + std::to_string(index) +
                            " outside grid of " + std::to_string(sites()));
  }
  return {index / side_ + 1, index % side_ + 1};
}

int GridGeometry::index_of(SiteCoord c) const {
  if (c.row < 1 || c.row > side_ || c.col < 1 || c.col > side_) {
    throw std::out_of_range("coordinate outside grid");
  }
  return (c.row - 1) * side_ + (c.col - 1);
}

double GridGeometry::distance(int i, int j) const {
  const SiteCoord a = coords(i);
  const SiteCoord b = coords(j);
  return std::hypot(double(a.row - b.row), double(a.col - b.col));
}

int GridGeometry::rotate90(int index) const {
  const SiteCoord c = coords(index);
  return index_of({c.col, side_ + 1 - c.row});
}

SiteCoord site_coords(const GridGeometry& geometry, int site_number) {
  if (site_number < 1 || site_number > geometry.sites()) {
    throw std::out_of_range("site number " + std::to_string(site_number) +
                            " outside 1.." + std::to_string(geometry.sites()));
  }
  return geometry.coords(site_number - 1);
}

Layout::Layout(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("layout entries must be 0 or 1");
  }
}

Layout Layout::from_string(std::string_view s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("layout string must contain only 0/1");
    }
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return Layout(std::move(bits));
}

Layout Layout::from_label(std::uint64_t label, int sites) {
  if (sites < 0 || sites > 64) throw std::invalid_argument("label width must be <= 64");
  Layout out(static_cast<std::size_t>(sites));
  for (int i = 0; i < sites; ++i) {
    out.bits_[i] = static_cast<std::uint8_t>((label >> (sites - 1 - i)) & 1u);
  }
  return out;
}

int Layout::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::uint64_t Layout::label() const {
  if (bits_.size() > 64) throw std::logic_error("layout too wide for an integer label");
  std::uint64_t out = 0;
  for (auto b : bits_) out = (out << 1) | b;
  return out;
}

std::string Layout::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::vector<int> Layout::occupied_sites() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

Layout Layout::rotated90(const GridGeometry& geometry) const {
  if (static_cast<int>(bits_.size()) != geometry.sites()) {
    throw std::invalid_argument("layout size does not match grid");
  }
  Layout out(bits_.size());
  for (int i = 0; i < geometry.sites(); ++i) {
    out.bits_[geometry.rotate90(i)] = bits_[i];
  }
  return out;
}

}  // namespace wflo
