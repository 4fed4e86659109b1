#include "olapcube/view.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace olap {

namespace {

Result<std::vector<std::size_t>> resolve_axes(const CubeSchema& schema, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    auto d = schema.find_dimension(n);
    if (!d) return Status(ErrorCode::kAxis, "unknown dimension '" + n + "' in axes");
    out.push_back(*d);
  }
  return out;
}

std::vector<std::string> axis_names(const CubeSchema& schema, const std::vector<std::size_t>& axes) {
  std::vector<std::string> out;
  for (std::size_t d : axes) out.push_back(schema.dimension(d).name());
  return out;
}

}  // namespace

std::vector<std::string> CubeView::row_axis_names() const { return axis_names(cube_->schema(), row_axes_); }
std::vector<std::string> CubeView::col_axis_names() const { return axis_names(cube_->schema(), col_axes_); }

Result<CubeView> materialize(CubePtr cube, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  if (cube == nullptr) return Status(ErrorCode::kAxis, "view needs a cube");
  const auto present = cube->present_dimensions();
  std::vector<std::size_t> all = rows;
  all.insert(all.end(), cols.begin(), cols.end());
  std::vector<std::size_t> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return Status(ErrorCode::kAxis, "a dimension appears on more than one axis position");
  }
  if (sorted != present) {
    return Status(ErrorCode::kAxis, "row and column axes must cover exactly the cube's retained dimensions");
  }

  // Component index of each dimension inside a cell coordinate.
  std::map<std::size_t, std::size_t> component;
  for (std::size_t k = 0; k < present.size(); ++k) component[present[k]] = k;
  auto project = [&](const Coordinate& coord, const std::vector<std::size_t>& axes) {
    Coordinate out;
    out.reserve(axes.size());
    for (std::size_t d : axes) out.push_back(coord[component[d]]);
    return out;
  };

  std::set<Coordinate> row_set;
  std::set<Coordinate> col_set;
  for (const auto& [coord, states] : cube->cells()) {
    row_set.insert(project(coord, rows));
    col_set.insert(project(coord, cols));
  }

  CubeView view;
  view.row_headers_.assign(row_set.begin(), row_set.end());
  view.col_headers_.assign(col_set.begin(), col_set.end());
  view.grid_.assign(view.row_headers_.size() * view.col_headers_.size(), std::nullopt);
  for (const auto& [coord, states] : cube->cells()) {
    const auto r = std::lower_bound(view.row_headers_.begin(), view.row_headers_.end(), project(coord, rows)) -
                   view.row_headers_.begin();
    const auto c = std::lower_bound(view.col_headers_.begin(), view.col_headers_.end(), project(coord, cols)) -
                   view.col_headers_.begin();
    view.grid_[static_cast<std::size_t>(r) * view.col_headers_.size() + static_cast<std::size_t>(c)] =
        cube->finalized(states);
  }
  view.cube_ = std::move(cube);
  view.row_axes_ = std::move(rows);
  view.col_axes_ = std::move(cols);
  return view;
}

Result<CubeView> to_view(CubePtr cube, const std::vector<std::string>& row_axes,
                         const std::vector<std::string>& col_axes) {
  if (cube == nullptr) return Status(ErrorCode::kAxis, "view needs a cube");
  OLAP_ASSIGN_OR_RETURN(auto rows, resolve_axes(cube->schema(), row_axes));
  OLAP_ASSIGN_OR_RETURN(auto cols, resolve_axes(cube->schema(), col_axes));
  return materialize(std::move(cube), std::move(rows), std::move(cols));
}

Result<CubeView> pivot(const CubeView& view, const std::vector<std::string>& row_axes,
                       const std::vector<std::string>& col_axes) {
  OLAP_ASSIGN_OR_RETURN(auto rows, resolve_axes(view.cube()->schema(), row_axes));
  OLAP_ASSIGN_OR_RETURN(auto cols, resolve_axes(view.cube()->schema(), col_axes));
  std::vector<std::size_t> before = view.row_axes();
  before.insert(before.end(), view.col_axes().begin(), view.col_axes().end());
  std::vector<std::size_t> after = rows;
  after.insert(after.end(), cols.begin(), cols.end());
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  if (before != after) {
    return Status(ErrorCode::kAxis, "pivot axes must be a permutation of the view's axes");
  }
  return materialize(view.cube(), std::move(rows), std::move(cols));
}

}  // namespace olap
