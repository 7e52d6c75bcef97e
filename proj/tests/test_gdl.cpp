#include <doctest.h>

#include <string>

#include "lumen/gdl.hpp"
#include "lumen/rng.hpp"
#include "test_helpers.hpp"

using namespace lumen;

namespace {

const char* kMini = R"(name=mini
grid=4x4

SpriteSet:
gem > resource
avatar > avatar-mover

InteractionSet:
gem avatar > collectResource score=1

TerminationSet:
sprite-counter sprite=gem count=0 win

LevelMapping:
. >
g > gem
A > avatar
)";

}  // namespace

TEST_CASE("parse_game reads sections, order and params") {
  auto desc = testutil::load_zelda();
  CHECK(desc.name == "zelda");
  CHECK(desc.width == 12);
  CHECK(desc.height == 10);
  REQUIRE(desc.sprites.size() == 6);
  CHECK(desc.sprites[0].id == "wall");
  CHECK(desc.sprites[3].id == "monster");
  CHECK(desc.sprites[3].behavior == gdl::Behavior::RandomNpc);
  CHECK(desc.sprites[3].cooldown == 2);
  CHECK(desc.sprites[4].behavior == gdl::Behavior::Flicker);
  CHECK(desc.sprites[4].lifetime == 2);
  REQUIRE(desc.interactions.size() == 6);
  CHECK(desc.interactions[0].label == "stepback");
  CHECK(desc.interactions[0].actors == std::vector<std::string>{"avatar", "monster"});
  CHECK(desc.interactions[1].condition.has_value());
  CHECK(desc.interactions[1].condition->resource == "key");
  CHECK(desc.interactions[1].condition->op == gdl::Cmp::Lt);
  CHECK(desc.interactions[5].score_delta == 1);
  REQUIRE(desc.terminations.size() == 2);
  CHECK(desc.terminations[0].win);
  CHECK_FALSE(desc.terminations[1].win);
  CHECK(desc.tile_alphabet == ".w+geA");
  CHECK(desc.floor_char == '.');
  CHECK(desc.avatar_char == 'A');
  CHECK(desc.conditioned_resource() == std::string("key"));
}

TEST_CASE("empty InteractionSet parses to zero interactions") {
  std::string text = R"(name=bare
SpriteSet:
avatar > avatar-mover
InteractionSet:
TerminationSet:
timeout ticks=10 lose
LevelMapping:
. >
A > avatar
)";
  auto desc = gdl::parse_game(text);
  CHECK(desc.interactions.empty());
}

TEST_CASE("undeclared identifier error names the sprite and line") {
  std::string text = R"(name=bad
SpriteSet:
avatar > avatar-mover
InteractionSet:
avatar ghost > killSprite
TerminationSet:
timeout ticks=10 lose
LevelMapping:
. >
A > avatar
)";
  try {
    gdl::parse_game(text);
    FAIL("expected ParseError");
  } catch (const gdl::ParseError& e) {
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    CHECK(e.line() == 5);
  }
}

TEST_CASE("duplicate mapping character is rejected") {
  std::string text = R"(name=bad
SpriteSet:
avatar > avatar-mover
wall > immovable
InteractionSet:
TerminationSet:
timeout ticks=10 lose
LevelMapping:
. >
A > avatar
A > wall
)";
  CHECK_THROWS_AS(gdl::parse_game(text), gdl::ParseError);
}

TEST_CASE("missing avatar is rejected") {
  std::string text = R"(name=bad
SpriteSet:
wall > immovable
InteractionSet:
TerminationSet:
timeout ticks=10 lose
LevelMapping:
. >
w > wall
)";
  CHECK_THROWS_WITH_AS(gdl::parse_game(text),
                       doctest::Contains("no avatar sprite"), gdl::ParseError);
}

TEST_CASE("second avatar class is rejected") {
  std::string text = R"(name=bad
SpriteSet:
avatar > avatar-mover
avatar2 > avatar-mover
InteractionSet:
TerminationSet:
timeout ticks=10 lose
LevelMapping:
. >
A > avatar
B > avatar2
)";
  CHECK_THROWS_AS(gdl::parse_game(text), gdl::ParseError);
}

TEST_CASE("missing section is rejected") {
  std::string text = R"(name=bad
SpriteSet:
avatar > avatar-mover
LevelMapping:
. >
A > avatar
)";
  CHECK_THROWS_AS(gdl::parse_game(text), gdl::ParseError);
}

TEST_CASE("floor character is required") {
  std::string text = R"(name=bad
SpriteSet:
avatar > avatar-mover
InteractionSet:
TerminationSet:
timeout ticks=10 lose
LevelMapping:
A > avatar
)";
  CHECK_THROWS_WITH_AS(gdl::parse_game(text), doctest::Contains("floor"),
                       gdl::ParseError);
}

TEST_CASE("syntax errors carry line numbers") {
  std::string text = "name=bad\nSpriteSet:\navatar avatar-mover\n";
  try {
    gdl::parse_game(text);
    FAIL("expected ParseError");
  } catch (const gdl::ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("mapping stacks instantiate several sprites per char") {
  auto desc = testutil::load_solarfox();
  const auto* stack = desc.stack_for('e');
  REQUIRE(stack != nullptr);
  CHECK(*stack == std::vector<std::string>{"enemyground", "enemy"});
}

// ---------------------------------------------------------------------------

TEST_CASE("parse_level accepts a minimal valid level") {
  auto desc = gdl::parse_game(kMini);
  auto level = gdl::parse_level(testutil::rows("....", ".A..", "....", "...."), desc);
  CHECK(level.width == 4);
  CHECK(level.height == 4);
  CHECK(level.at(1, 1) == 'A');
}

TEST_CASE("parse_level rejects two avatars") {
  auto desc = gdl::parse_game(kMini);
  CHECK_THROWS_WITH_AS(
      gdl::parse_level(testutil::rows("A...", ".A..", "....", "...."), desc),
      doctest::Contains("exactly one avatar"), gdl::ParseError);
}

TEST_CASE("parse_level names row and col of an unknown character") {
  auto desc = gdl::parse_game(kMini);
  try {
    gdl::parse_level(testutil::rows("....", "..X.", "A...", "...."), desc);
    FAIL("expected ParseError");
  } catch (const gdl::ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("'X'") != std::string::npos);
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("col 3") != std::string::npos);
  }
}

TEST_CASE("parse_level rejects ragged input") {
  auto desc = gdl::parse_game(kMini);
  CHECK_THROWS_WITH_AS(
      gdl::parse_level(testutil::rows("....", "..", "A...", "...."), desc),
      doctest::Contains("non-rectangular"), gdl::ParseError);
}

TEST_CASE("parse_level checks the game's grid size") {
  auto desc = gdl::parse_game(kMini);
  CHECK_THROWS_AS(gdl::parse_level(testutil::rows("...", ".A.", "..."), desc),
                  gdl::ParseError);
}

TEST_CASE("serialize_level uses newline separators and no padding") {
  auto desc = gdl::parse_game(kMini);
  auto level = gdl::parse_level(testutil::rows("....", ".A..", "....", "...."), desc);
  std::string text = gdl::serialize_level(level);
  CHECK(text == "....\n.A..\n....\n....\n");
  CHECK(text.find(' ') == std::string::npos);
}

TEST_CASE("levels round-trip through serialize/parse") {
  auto desc = testutil::load_zelda();
  lumen::Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    gdl::Level level;
    level.width = desc.width;
    level.height = desc.height;
    level.grid.assign(static_cast<size_t>(desc.width) * desc.height, '.');
    std::string fill = ".w+ge";
    for (auto& c : level.grid) c = fill[rng.below(static_cast<std::uint32_t>(fill.size()))];
    level.grid[rng.below(static_cast<std::uint32_t>(level.grid.size()))] = 'A';
    // skip grids that the extra avatar roll made invalid
    if (gdl::count_avatars(level, desc) != 1) continue;
    auto again = gdl::parse_level(gdl::serialize_level(level), desc);
    REQUIRE(again == level);
  }
}

TEST_CASE("game descriptions round-trip through serialize/parse") {
  for (auto loader : {&testutil::load_zelda, &testutil::load_solarfox,
                      &testutil::load_plants, &testutil::load_gather}) {
    auto desc = loader();
    auto again = gdl::parse_game(gdl::serialize_game(desc));
    REQUIRE(again == desc);
    // serialization is a fixed point
    CHECK(gdl::serialize_game(again) == gdl::serialize_game(desc));
  }
}
