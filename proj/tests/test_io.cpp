#include <doctest.h>

#include "tpd/construct.hpp"
#include "tpd/errors.hpp"
#include "tpd/instances.hpp"
#include "tpd/io.hpp"
#include "tpd/walks.hpp"

using namespace tpd;

TEST_CASE("instance json") {
  const Instance inst({Rational(5), Rational(9, 2)}, {Rational(6), Rational(7, 2)});
  const Json j = to_json(inst);
  CHECK(j.dump() == R"({"m":2,"n":2,"u":["5","9/2"],"v":["6","7/2"]})");
  CHECK(instance_from_json(j) == inst);
  CHECK(instance_from_json(Json::parse(R"({"u":["5/1","5/1"],"v":["6/1",2,"2"]})")).v().front() == Rational(6));
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"m":3,"u":["1"],"v":["1"]})")), InvalidArgument);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"u":["1"]})")), InvalidArgument);
}

TEST_CASE("walk json is 1-based and round-trips") {
  const GeneratedCase c = gen_example1();
  const Walk w = cdfm_walk_2xn(c.instance, c.from, c.to);
  const Json j = to_json(w);
  CHECK(j["kind"] == "CD_fm");
  CHECK(j["steps"][0]["alpha"] == "2");
  CHECK(j["steps"][0]["circuit"].dump() == "[[1,1,-1],[1,3,1],[2,1,1],[2,3,-1]]");
  CHECK(j["points"][0].dump() == R"([["2","1","0"],["0","1","2"]])");
  const Walk back = walk_from_json(Json::parse(j.dump()));
  CHECK(back.points() == w.points());
  CHECK(back.steps().front().circuit == w.steps().front().circuit);
  CHECK(validate_walk(back, c.instance).valid);
}

TEST_CASE("tables") {
  Table t{{"a", "b"}, {{"1", "x,y"}, {"2", "q\"r"}}};
  CHECK(t.to_csv() == "a,b\n1,\"x,y\"\n2,\"q\"\"r\"\n");
  CHECK(t.to_json().dump() == R"([{"a":"1","b":"x,y"},{"a":"2","b":"q\"r"}])");
}
