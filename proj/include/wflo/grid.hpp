#ifndef WFLO_GRID_HPP_
#define WFLO_GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wflo {

// 1-based (row, col) of a site. Row 1 is the northern edge, col 1 the
// western edge.
struct SiteCoord {
  int row = 0;
  int col = 0;
  bool operator==(const SiteCoord&) const = default;
};

// Square l x l grid of candidate turbine sites with unit spacing.
//
// Sites are numbered 1..q row-major from the north-west corner, so site 1
// is (1,1) and site q is (l,l). Internally every container is indexed by
// the 0-based site index (site number - 1).
class GridGeometry {
 public:
  explicit GridGeometry(int l_grid);

  int side() const { return side_; }
  int sites() const { return side_ * side_; }

  // 0-based index -> 1-based coordinates.
  SiteCoord coords(int index) const;
  int index_of(SiteCoord c) const;

  // Euclidean centre-to-centre distance in grid-box units.
  double distance(int i, int j) const;

  // Site index that `index` moves to when the grid is rotated by 90
  // degrees clockwise.
  int rotate90(int index) const;

 private:
  int side_;
};

// Site-number lookup: site number in 1..q, throws std::out_of_range
// otherwise.
SiteCoord site_coords(const GridGeometry& geometry, int site_number);

// Binary turbine placement x in {0,1}^q.
//
// String and integer forms use one convention everywhere: the leftmost
// character / highest-order bit is site 1. The integer form is also the
// computational-basis label of the corresponding qubit register.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::size_t sites) : bits_(sites, 0) {}
  explicit Layout(std::vector<std::uint8_t> bits);

  static Layout from_string(std::string_view s);
  static Layout from_label(std::uint64_t label, int sites);

  std::size_t size() const { return bits_.size(); }
  bool occupied(std::size_t index) const { return bits_[index] != 0; }
  void set(std::size_t index, bool on) { bits_[index] = on ? 1 : 0; }
  void flip(std::size_t index) { bits_[index] ^= 1; }

  int count() const;
  // Requires size() <= 64.
  std::uint64_t label() const;
  std::string to_string() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  // Occupied 0-based indices in ascending order.
  std::vector<int> occupied_sites() const;

  Layout rotated90(const GridGeometry& geometry) const;

  bool operator==(const Layout&) const = default;
  // Lexicographic on the bit string, i.e. ascending label order.
  auto operator<=>(const Layout& other) const { return bits_ <=> other.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace wflo

#endif  // WFLO_GRID_HPP_
