#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "olapcube/status.hpp"

namespace olap {

using MemberId = std::uint32_t;

// Reserved target name for rolling a dimension away entirely.
inline constexpr std::string_view kAllLevel = "ALL";

// One level of a dimension hierarchy. Member ids are positions in `members`
// (declaration order); that order is also the header order in views.
struct LevelSpec {
  std::string name;
  std::vector<std::string> members;
};

// A dimension with levels ordered finest -> coarsest. parent[i][m] is the id,
// at level i + 1, of the parent of member m at level i.
class DimensionSpec {
 public:
  static Result<DimensionSpec> Make(std::string name, std::vector<LevelSpec> levels,
                                    std::vector<std::vector<MemberId>> parent);

  const std::string& name() const { return name_; }
  std::size_t level_count() const { return levels_.size(); }
  const LevelSpec& level(std::size_t i) const { return levels_[i]; }
  std::size_t cardinality(std::size_t level) const { return levels_[level].members.size(); }
  const std::string& member_name(std::size_t level, MemberId id) const {
    return levels_[level].members[id];
  }

  std::optional<std::size_t> find_level(std::string_view level_name) const;
  std::optional<MemberId> find_member(std::size_t level, std::string_view member) const;

  // Id at level `to` of the ancestor of member `id` at level `from` (from <= to).
  MemberId ancestor(std::size_t from, std::size_t to, MemberId id) const;
  // Ancestor table mapping every base member to its ancestor at `level`.
  const std::vector<MemberId>& base_ancestors(std::size_t level) const {
    return base_ancestors_[level];
  }

 private:
  std::string name_;
  std::vector<LevelSpec> levels_;
  std::vector<std::vector<MemberId>> parent_;
  std::vector<std::vector<MemberId>> base_ancestors_;
  std::vector<std::unordered_map<std::string, MemberId>> index_;
};

enum class MeasureKind { kInteger, kReal };

std::string_view measure_kind_name(MeasureKind kind);

struct MeasureSpec {
  std::string name;
  MeasureKind kind = MeasureKind::kInteger;
};

class CubeSchema {
 public:
  static Result<CubeSchema> Make(std::vector<DimensionSpec> dimensions,
                                 std::vector<MeasureSpec> measures);

  const std::vector<DimensionSpec>& dimensions() const { return dimensions_; }
  const std::vector<MeasureSpec>& measures() const { return measures_; }
  const DimensionSpec& dimension(std::size_t i) const { return dimensions_[i]; }
  const MeasureSpec& measure(std::size_t i) const { return measures_[i]; }

  std::optional<std::size_t> find_dimension(std::string_view name) const;
  std::optional<std::size_t> find_measure(std::string_view name) const;

 private:
  std::vector<DimensionSpec> dimensions_;
  std::vector<MeasureSpec> measures_;
};

using SchemaPtr = std::shared_ptr<const CubeSchema>;

// Parses the schema document:
//   {"dimensions": [{"name": "geo", "levels": ["city", "country"],
//                    "members": {"city": [...], "country": [...]},
//                    "parent": {"city": {"NYC": "US", ...}}}, ...],
//    "measures": [{"name": "sales", "kind": "integer" | "real"}]}
Result<SchemaPtr> parse_schema(std::string_view json_text);

}  // namespace olap
