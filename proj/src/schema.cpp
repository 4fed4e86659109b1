#include "olapcube/schema.hpp"

#include <set>

#include "json_util.hpp"

namespace olap {

namespace {

Status schema_error(std::string message) { return Status(ErrorCode::kSchema, std::move(message)); }

}  // namespace

std::string_view measure_kind_name(MeasureKind kind) {
  return kind == MeasureKind::kInteger ? "integer" : "real";
}

Result<DimensionSpec> DimensionSpec::Make(std::string name, std::vector<LevelSpec> levels,
                                          std::vector<std::vector<MemberId>> parent) {
  if (name.empty()) return schema_error("dimension name must be non-empty");
  if (levels.empty()) return schema_error("dimension '" + name + "' declares no levels");
  if (parent.size() + 1 != levels.size()) {
    return schema_error("dimension '" + name + "': parent map count does not match levels");
  }

  DimensionSpec dim;
  dim.name_ = std::move(name);
  std::set<std::string> level_names;
  for (const auto& level : levels) {
    if (level.name.empty()) return schema_error("dimension '" + dim.name_ + "' has an unnamed level");
    if (level.name == kAllLevel) {
      return schema_error("dimension '" + dim.name_ + "': level name 'ALL' is reserved");
    }
    if (!level_names.insert(level.name).second) {
      return schema_error("dimension '" + dim.name_ + "': duplicate level '" + level.name + "'");
    }
    std::unordered_map<std::string, MemberId> index;
    for (std::size_t i = 0; i < level.members.size(); ++i) {
      if (level.members[i].empty()) {
        return schema_error("dimension '" + dim.name_ + "' level '" + level.name +
                            "': empty member identifier");
      }
      if (!index.emplace(level.members[i], static_cast<MemberId>(i)).second) {
        return schema_error("dimension '" + dim.name_ + "' level '" + level.name +
                            "': duplicate member '" + level.members[i] + "'");
      }
    }
    dim.index_.push_back(std::move(index));
  }
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i].size() != levels[i].members.size()) {
      return schema_error("dimension '" + dim.name_ + "' level '" + levels[i].name +
                          "': every member needs exactly one parent");
    }
    for (MemberId p : parent[i]) {
      if (p >= levels[i + 1].members.size()) {
        return schema_error("dimension '" + dim.name_ + "' level '" + levels[i].name +
                            "': parent id out of range");
      }
    }
  }
  dim.levels_ = std::move(levels);
  dim.parent_ = std::move(parent);

  const std::size_t base_count = dim.levels_.front().members.size();
  dim.base_ancestors_.resize(dim.levels_.size());
  auto& base = dim.base_ancestors_[0];
  base.resize(base_count);
  for (std::size_t m = 0; m < base_count; ++m) base[m] = static_cast<MemberId>(m);
  for (std::size_t lvl = 1; lvl < dim.levels_.size(); ++lvl) {
    const auto& prev = dim.base_ancestors_[lvl - 1];
    auto& cur = dim.base_ancestors_[lvl];
    cur.resize(base_count);
    for (std::size_t m = 0; m < base_count; ++m) cur[m] = dim.parent_[lvl - 1][prev[m]];
  }
  return dim;
}

std::optional<std::size_t> DimensionSpec::find_level(std::string_view level_name) const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].name == level_name) return i;
  }
  return std::nullopt;
}

std::optional<MemberId> DimensionSpec::find_member(std::size_t level, std::string_view member) const {
  const auto& index = index_[level];
  auto it = index.find(std::string(member));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

MemberId DimensionSpec::ancestor(std::size_t from, std::size_t to, MemberId id) const {
  for (std::size_t lvl = from; lvl < to; ++lvl) id = parent_[lvl][id];
  return id;
}

Result<CubeSchema> CubeSchema::Make(std::vector<DimensionSpec> dimensions,
                                    std::vector<MeasureSpec> measures) {
  if (dimensions.empty()) return schema_error("schema declares no dimensions");
  if (measures.empty()) return schema_error("schema declares no measures");
  std::set<std::string> names;
  for (const auto& d : dimensions) {
    if (!names.insert(d.name()).second) return schema_error("duplicate dimension '" + d.name() + "'");
  }
  names.clear();
  for (const auto& m : measures) {
    if (m.name.empty()) return schema_error("measure name must be non-empty");
    if (!names.insert(m.name).second) return schema_error("duplicate measure '" + m.name + "'");
  }
  CubeSchema schema;
  schema.dimensions_ = std::move(dimensions);
  schema.measures_ = std::move(measures);
  return schema;
}

std::optional<std::size_t> CubeSchema::find_dimension(std::string_view name) const {
  for (std::size_t i = 0; i < dimensions_.size(); ++i) {
    if (dimensions_[i].name() == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> CubeSchema::find_measure(std::string_view name) const {
  for (std::size_t i = 0; i < measures_.size(); ++i) {
    if (measures_[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

using json_util::json;

Result<DimensionSpec> parse_dimension(const json& doc) {
  if (!doc.is_object()) return schema_error("dimension entry must be an object");
  OLAP_ASSIGN_OR_RETURN(std::string name, json_util::get_string(doc, "name", ErrorCode::kSchema, "dimension"));
  const json* levels_doc = json_util::find(doc, "levels");
  if (levels_doc == nullptr || !levels_doc->is_array()) {
    return schema_error("dimension '" + name + "': 'levels' must be an array");
  }
  const json* members_doc = json_util::find(doc, "members");
  if (members_doc == nullptr || !members_doc->is_object()) {
    return schema_error("dimension '" + name + "': 'members' must be an object keyed by level");
  }

  std::vector<LevelSpec> levels;
  for (const auto& level_name : *levels_doc) {
    if (!level_name.is_string()) return schema_error("dimension '" + name + "': level names must be strings");
    LevelSpec level;
    level.name = level_name.get<std::string>();
    const json* list = json_util::find(*members_doc, level.name);
    if (list == nullptr || !list->is_array()) {
      return schema_error("dimension '" + name + "': no member list for level '" + level.name + "'");
    }
    for (const auto& m : *list) {
      if (!m.is_string()) return schema_error("dimension '" + name + "': member ids must be strings");
      level.members.push_back(m.get<std::string>());
    }
    levels.push_back(std::move(level));
  }

  // Parent maps are resolved by name against the next-coarser level here;
  // structural checks happen in DimensionSpec::Make.
  const json* parent_doc = json_util::find(doc, "parent");
  if (parent_doc != nullptr && !parent_doc->is_object()) {
    return schema_error("dimension '" + name + "': 'parent' must be an object keyed by level");
  }
  std::vector<std::vector<MemberId>> parent;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& level = levels[i];
    const auto& next = levels[i + 1];
    const json* map = parent_doc == nullptr ? nullptr : json_util::find(*parent_doc, level.name);
    if (map == nullptr || !map->is_object()) {
      return schema_error("dimension '" + name + "': no parent map for level '" + level.name + "'");
    }
    std::vector<MemberId> ids;
    ids.reserve(level.members.size());
    for (const auto& member : level.members) {
      const json* p = json_util::find(*map, member);
      if (p == nullptr || !p->is_string()) {
        return schema_error("dimension '" + name + "': member '" + member + "' at level '" + level.name +
                            "' has no parent");
      }
      const std::string pname = p->get<std::string>();
      std::optional<MemberId> pid;
      for (std::size_t k = 0; k < next.members.size(); ++k) {
        if (next.members[k] == pname) {
          pid = static_cast<MemberId>(k);
          break;
        }
      }
      if (!pid) {
        return schema_error("dimension '" + name + "': parent '" + pname + "' of '" + member +
                            "' is not a member of level '" + next.name + "'");
      }
      ids.push_back(*pid);
    }
    if (map->size() != level.members.size()) {
      return schema_error("dimension '" + name + "': parent map for level '" + level.name +
                          "' names undeclared members");
    }
    parent.push_back(std::move(ids));
  }
  return DimensionSpec::Make(std::move(name), std::move(levels), std::move(parent));
}

Result<MeasureSpec> parse_measure(const json& doc) {
  if (!doc.is_object()) return schema_error("measure entry must be an object");
  MeasureSpec spec;
  OLAP_ASSIGN_OR_RETURN(spec.name, json_util::get_string(doc, "name", ErrorCode::kSchema, "measure"));
  OLAP_ASSIGN_OR_RETURN(std::string kind, json_util::get_string(doc, "kind", ErrorCode::kSchema, "measure"));
  if (kind == "integer") {
    spec.kind = MeasureKind::kInteger;
  } else if (kind == "real") {
    spec.kind = MeasureKind::kReal;
  } else {
    return schema_error("measure '" + spec.name + "': unknown kind '" + kind + "'");
  }
  return spec;
}

}  // namespace

Result<SchemaPtr> parse_schema(std::string_view json_text) {
  OLAP_ASSIGN_OR_RETURN(json doc, json_util::parse(json_text, "schema document"));
  if (!doc.is_object()) return schema_error("schema document must be an object");
  const json* dims = json_util::find(doc, "dimensions");
  const json* measures = json_util::find(doc, "measures");
  if (dims == nullptr || !dims->is_array()) return schema_error("schema needs a 'dimensions' array");
  if (measures == nullptr || !measures->is_array()) return schema_error("schema needs a 'measures' array");

  std::vector<DimensionSpec> dimensions;
  for (const auto& d : *dims) {
    OLAP_ASSIGN_OR_RETURN(DimensionSpec dim, parse_dimension(d));
    dimensions.push_back(std::move(dim));
  }
  std::vector<MeasureSpec> measure_specs;
  for (const auto& m : *measures) {
    OLAP_ASSIGN_OR_RETURN(MeasureSpec spec, parse_measure(m));
    measure_specs.push_back(std::move(spec));
  }
  OLAP_ASSIGN_OR_RETURN(CubeSchema schema, CubeSchema::Make(std::move(dimensions), std::move(measure_specs)));
  return std::make_shared<const CubeSchema>(std::move(schema));
}

}  // namespace olap
