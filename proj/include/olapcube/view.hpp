#pragma once

#include <optional>
#include <string>
#include <vector>

#include "olapcube/cube.hpp"
#include "olapcube/status.hpp"

namespace olap {

// A pivot-table arrangement of a cube. Rows and columns are the sorted
// distinct member tuples, over the row/column axes, that occur in cells.
// The grid is dense, row-major; empty positions hold nullopt.
class CubeView {
 public:
  using GridCell = std::optional<std::vector<Value>>;

  const CubePtr& cube() const { return cube_; }
  const std::vector<std::size_t>& row_axes() const { return row_axes_; }
  const std::vector<std::size_t>& col_axes() const { return col_axes_; }
  const std::vector<Coordinate>& row_headers() const { return row_headers_; }
  const std::vector<Coordinate>& col_headers() const { return col_headers_; }
  std::size_t row_count() const { return row_headers_.size(); }
  std::size_t col_count() const { return col_headers_.size(); }
  const GridCell& at(std::size_t r, std::size_t c) const { return grid_[r * col_headers_.size() + c]; }
  const std::vector<GridCell>& grid() const { return grid_; }

  std::vector<std::string> row_axis_names() const;
  std::vector<std::string> col_axis_names() const;

  friend bool operator==(const CubeView& a, const CubeView& b) {
    return a.row_axes_ == b.row_axes_ && a.col_axes_ == b.col_axes_ && a.row_headers_ == b.row_headers_ &&
           a.col_headers_ == b.col_headers_ && a.grid_ == b.grid_;
  }

 private:
  friend Result<CubeView> materialize(CubePtr cube, std::vector<std::size_t> rows, std::vector<std::size_t> cols);

  CubePtr cube_;
  std::vector<std::size_t> row_axes_;
  std::vector<std::size_t> col_axes_;
  std::vector<Coordinate> row_headers_;
  std::vector<Coordinate> col_headers_;
  std::vector<GridCell> grid_;
};

// Axes (dimension names) must partition the cube's retained dimensions.
Result<CubeView> to_view(CubePtr cube, const std::vector<std::string>& row_axes,
                         const std::vector<std::string>& col_axes);

// Re-arranges a view; the new axes must be a permutation of the old ones.
// The cube is shared, not copied.
Result<CubeView> pivot(const CubeView& view, const std::vector<std::string>& row_axes,
                       const std::vector<std::string>& col_axes);

Result<CubeView> materialize(CubePtr cube, std::vector<std::size_t> rows, std::vector<std::size_t> cols);

}  // namespace olap
