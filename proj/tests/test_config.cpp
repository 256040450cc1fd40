#include "doctest.h"

#include "conorm/catalog.hpp"
#include "conorm/config.hpp"

using namespace conorm;
using nlohmann::json;

namespace {

std::string path_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("config round trip is idempotent") {
  const char* docs[] = {
      R"({"group": "GL4", "action": "outer-SO", "frobenius": {"q": 3}, "qs": [2, 3]})",
      R"({"group": {"preset": "GL", "n": 4}, "action": {"preset": "block-swap"},
          "points": [{"num": [0, 0, 1, 2], "den": 3}, "1/2,0,0,1/2"]})",
      R"({"group": {"rank": 2, "roots": [[1, -1], [-1, 1]], "coroots": [[1, -1], [-1, 1]]},
          "action": {"group": {"cyclic": 2}, "diagrams": [[[1, 0], [0, 1]], [[0, -1], [-1, 0]]],
                     "twists": [{"num": [0, 0], "den": 1}, {"num": [0, 0], "den": 1}]},
          "frobenius": {"q": 5, "tau": [[0, -1], [-1, 0]]}})",
      R"({"group": "GL3xGL3", "action": "Z4-composite", "normal_subgroup": [0, 2],
          "product": {"r": 2, "m": 1}, "trivial_order": 3, "isogeny": "SL2-PGL2"})",
  };
  for (const char* text : docs) {
    CAPTURE(text);
    JobConfig once = parse_config_text(text);
    json a = to_json(once);
    json b = to_json(parse_config(a));
    CHECK(a == b);
    CHECK(to_json(parse_config(b)).dump() == a.dump());
  }
}

TEST_CASE("configs resolve to validated objects") {
  auto c = parse_config_text(R"({"group": "GL4", "action": "outer-SO"})");
  CHECK(same_action(resolve_action(c), preset_action("GL4", "outer-SO")));

  auto e = parse_config_text(R"({"group": {"rank": 2, "roots": [[1, -1], [-1, 1]], "coroots": [[1, -1], [-1, 1]]},
      "action": {"group": {"cyclic": 2}, "diagrams": [[[1, 0], [0, 1]], [[0, -1], [-1, 0]]]},
      "frobenius": {"q": 5, "tau": [[0, -1], [-1, 0]]}})");
  auto a = resolve_action(e);
  CHECK(a.group().size() == 2);
  CHECK(validate_action(a).ok());
  auto f = resolve_frobenius(e, 2);
  CHECK(f.q == 5);
  CHECK(f.p == 5);
  CHECK(f.tau(0, 1) == -1);
  // no action: trivial of order 1
  auto plain = parse_config_text(R"({"group": "SL3"})");
  CHECK(resolve_action(plain).group().size() == 1);
}

TEST_CASE("config errors carry positions") {
  CHECK(path_of(R"({"group": "GL4", "frobenius": {"q": 6}})") == "/frobenius/q");
  CHECK(path_of(R"({"group": "GL4", "colour": 1})") == "/colour");
  CHECK(path_of(R"({"group": {"rank": 2, "roots": [[1, -1], [-1]], "coroots": [[1, -1], [-1, 1]]}})") ==
        "/group/roots/1");
  CHECK(path_of(R"({"points": [{"num": [1], "den": 0}]})") == "/points/0/den");
  CHECK(path_of(R"({"group": "GL4", "action": {"group": {"cyclic": 2}, "diagrams": [[[1]]]}})") ==
        "/action/diagrams");
  CHECK(path_of(R"({"group": "GL4", "qs": [2, 3, 12]})") == "/qs/2");
  CHECK(path_of("{\"group\": ") == "");

  // a diagram that does not permute the simple roots fails validation
  auto bad = parse_config_text(R"({"group": {"rank": 2, "roots": [[1, -1], [-1, 1]], "coroots": [[1, -1], [-1, 1]]},
      "action": {"group": {"cyclic": 2}, "diagrams": [[[1, 0], [0, 1]], [[2, 0], [0, 1]]]}})");
  CHECK_THROWS_AS(resolve_action(bad), ConfigError);
  auto unknown = parse_config_text(R"({"group": "GL5x"})");
  CHECK_THROWS_AS(resolve_group(unknown), ConfigError);
}

TEST_CASE("points from text") {
  CHECK(parse_point("0,0,1/3,2/3") == TorsionVector({0, 0, 1, 2}, 3));
  CHECK(parse_point("1/2,3/2") == TorsionVector({1, 1}, 2));
  CHECK(parse_point("-1/4") == TorsionVector({3}, 4));
  CHECK_THROWS(parse_point("a/b"));
  CHECK_THROWS(parse_point("1/0"));
}
