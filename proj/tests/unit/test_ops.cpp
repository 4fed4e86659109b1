#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "olapcube/ops.hpp"
#include "test_support.hpp"

using namespace olap;
using namespace olap::testing;

namespace {

std::string replace_first(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

// Named cells of a cube compared to the oracle (sum, count).
void check_against_oracle(const Cube& cube, const TableModel& t, const std::vector<OracleFilter>& filters = {}) {
  const auto oracle = oracle_group_by(t, cube.levels(), filters);
  const auto cells = named_cells(cube);
  REQUIRE(cells.size() == oracle.size());
  for (const auto& [key, values] : cells) {
    REQUIRE(oracle.count(key) == 1);
    CHECK(as_int(values[0]) == oracle.at(key).sum);
  }
}

Cube random_cube(const TableModel& t, const ParallelConfig& cfg = config(2, 11)) {
  return must(build_cube(must_facts(t.schema_json(), t.csv()), std::vector<AggRequest>{{"v", AggFn::kSum}}, cfg));
}

}  // namespace

TEST_CASE("roll_up geo to country") {
  const Cube base = sales_cube();
  const Cube up = must(roll_up(base, "geo", "country"));
  const auto cells = named_cells(up);
  CHECK(up.levels()[0] == std::size_t{1});
  CHECK(as_int(cells.at({"US", "A", "Q1"})[0]) == 10);
  CHECK(as_int(cells.at({"US", "B", "Q2"})[0]) == 60);
  CHECK(as_int(cells.at({"US", "A", "Q2"})[0]) == 30);
  CHECK(as_int(cells.at({"DE", "A", "Q1"})[0]) == 40);
  CHECK(total(up) == 210);

  const Cube us = must(roll_up(must(roll_up(up, "product", "ALL")), "quarter", "ALL"));
  const auto by_country = named_cells(us);
  CHECK(as_int(by_country.at({"US"})[0]) == 120);
  CHECK(as_int(by_country.at({"DE"})[0]) == 90);
}

TEST_CASE("rolling every dimension to ALL gives the grand total") {
  Cube c = sales_cube();
  for (const char* d : {"geo", "product", "quarter"}) c = must(roll_up(c, d, "ALL"));
  REQUIRE(c.cell_count() == 1);
  CHECK(c.present_dimensions().empty());
  CHECK(as_int(named_cells(c).at({})[0]) == 210);
}

TEST_CASE("roll_up level order errors") {
  const Cube base = sales_cube();
  CHECK(roll_up(base, "geo", "city").status().code() == ErrorCode::kLevelOrder);
  const Cube up = must(roll_up(base, "geo", "country"));
  CHECK(roll_up(up, "geo", "city").status().code() == ErrorCode::kLevelOrder);
  const Cube gone = must(roll_up(base, "product", "ALL"));
  CHECK(roll_up(gone, "product", "ALL").status().code() == ErrorCode::kLevelOrder);
  CHECK(roll_up(base, "color", "ALL").status().code() == ErrorCode::kSchema);
  CHECK(roll_up(base, "geo", "continent").status().code() == ErrorCode::kSchema);
}

TEST_CASE("drill_down reverses roll_up") {
  const Cube base = sales_cube();
  const Cube up = must(roll_up(base, "geo", "country"));
  CHECK(must(drill_down(up, "geo", "city")) == base);
  const Cube gone = must(roll_up(base, "geo", "ALL"));
  CHECK(must(drill_down(gone, "geo", "city")) == base);
  CHECK(must(drill_down(gone, "geo", "country")) == up);
  CHECK(drill_down(base, "geo", "city").status().code() == ErrorCode::kLevelOrder);
  CHECK(drill_down(up, "geo", "ALL").status().code() == ErrorCode::kLevelOrder);
  CHECK(drill_down(up.detached(), "geo", "city").status().code() == ErrorCode::kUnsupportedDrill);
}

TEST_CASE("drill_down keeps earlier slice predicates") {
  const Cube up = must(roll_up(sales_cube(), "geo", "country"));
  const Cube q1 = must(slice(up, "quarter", "Q1"));
  const Cube down = must(drill_down(q1, "geo", "city"));
  CHECK(total(down) == 70);
  const auto cells = named_cells(down);
  CHECK(cells.size() == 3);
  CHECK(as_int(cells.at({"NYC", "A"})[0]) == 10);
  CHECK(as_int(cells.at({"BER", "A"})[0]) == 40);
}

TEST_CASE("slice") {
  const Cube base = sales_cube();
  const Cube q1 = must(slice(base, "quarter", "Q1"));
  CHECK(q1.present_dimensions() == std::vector<std::size_t>{0, 1});
  const auto cells = named_cells(q1);
  CHECK(cells.size() == 3);
  CHECK(as_int(cells.at({"NYC", "A"})[0]) == 10);
  CHECK(as_int(cells.at({"NYC", "B"})[0]) == 20);
  CHECK(as_int(cells.at({"BER", "A"})[0]) == 40);

  // A declared member with no facts slices to an empty cube.
  const std::string schema = replace_first(kSalesSchema, R"(["Q1", "Q2"])", R"(["Q1", "Q2", "Q3"])");
  auto facts = must_facts(schema, kSalesFacts);
  auto cube = must(build_cube(facts, std::vector<AggRequest>{{"sales", AggFn::kSum}}, config(1)));
  CHECK(must(slice(cube, "quarter", "Q3")).cell_count() == 0);

  // US is a country; geo is at city level.
  CHECK(slice(base, "geo", "US").status().code() == ErrorCode::kCoordinate);
  CHECK(slice(must(roll_up(base, "quarter", "ALL")), "quarter", "Q1").status().code() == ErrorCode::kCoordinate);
}

TEST_CASE("dice") {
  const Cube base = sales_cube();
  const Cube d = must(dice(base, {{"geo", {"NYC", "BER"}}, {"quarter", {"Q1"}}}));
  CHECK(d.present_dimensions().size() == 3);
  const auto cells = named_cells(d);
  CHECK(cells.size() == 3);
  CHECK(total(d) == 70);
  CHECK(must(dice(base, {})) == base);
  CHECK(dice(base, {{"geo", {}}}).status().code() == ErrorCode::kFilter);
  CHECK(dice(base, {{"color", {"red"}}}).status().code() == ErrorCode::kFilter);
  CHECK(dice(base, {{"geo", {"US"}}}).status().code() == ErrorCode::kFilter);
  const Cube countries = must(roll_up(base, "geo", "country"));
  CHECK(total(must(dice(countries, {{"geo", {"DE"}}}))) == 90);
}

TEST_CASE("operations leave their input untouched") {
  const Cube base = sales_cube();
  const Cube copy = base;
  (void)roll_up(base, "geo", "country");
  (void)slice(base, "quarter", "Q1");
  (void)dice(base, {{"product", {"A"}}});
  (void)drill_down(must(roll_up(base, "geo", "ALL")), "geo", "city");
  CHECK(base == copy);
  CHECK(base.filters().empty());
}

TEST_CASE("algebraic laws on random cubes") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const TableModel t = random_table(rng, std::uniform_int_distribution<std::size_t>(1, 200)(rng));
    const Cube base = random_cube(t);
    check_against_oracle(base, t);

    std::int64_t grand = 0;
    for (auto v : t.values) grand += v;

    const std::size_t d = std::uniform_int_distribution<std::size_t>(0, t.dims.size() - 1)(rng);
    const auto& dim = t.dims[d];

    // Roll-up: conservation, oracle equality, composition, round trip.
    for (std::size_t l = 1; l < dim.levels.size(); ++l) {
      const Cube up = must(roll_up(base, dim.name, dim.levels[l]));
      CHECK(total(up) == grand);
      check_against_oracle(up, t);
      CHECK(must(drill_down(up, dim.name, dim.levels[0])) == base);
      if (l + 1 < dim.levels.size()) {
        CHECK(must(roll_up(up, dim.name, dim.levels[l + 1])) == must(roll_up(base, dim.name, dim.levels[l + 1])));
      }
    }
    const Cube all = must(roll_up(base, dim.name, "ALL"));
    CHECK(total(all) == grand);
    check_against_oracle(all, t);
    CHECK(must(drill_down(all, dim.name, dim.levels[0])) == base);

    // Slice equals dice on one member followed by removing the dimension.
    const std::string& member = dim.members[0][std::uniform_int_distribution<std::size_t>(0, dim.members[0].size() - 1)(rng)];
    const Cube sliced = must(slice(base, dim.name, member));
    const Cube diced = must(dice(base, {{dim.name, {member}}}));
    CHECK(must(roll_up(diced, dim.name, "ALL")) == sliced);
    check_against_oracle(diced, t, {{d, 0, {member}}});

    // Slices over every member partition the total.
    std::int64_t parts = 0;
    for (const auto& m : dim.members[0]) parts += total(must(slice(base, dim.name, m)));
    CHECK(parts == grand);

    // Dice filters commute and intersect.
    if (t.dims.size() > 1) {
      const std::size_t e = (d + 1) % t.dims.size();
      const DiceFilter fa = {{dim.name, {dim.members[0].front()}}};
      const DiceFilter fb = {{t.dims[e].name, {t.dims[e].members[0].back()}}};
      const Cube ab = must(dice(must(dice(base, fa)), fb));
      const Cube ba = must(dice(must(dice(base, fb)), fa));
      DiceFilter both = fa;
      both.insert(fb.begin(), fb.end());
      CHECK(ab == ba);
      CHECK(ab == must(dice(base, both)));
    }
  }
}
