#include <doctest.h>

#include "ofl/report_io.hpp"

using namespace ofl;

TEST_SUITE("report") {
  TEST_CASE("point formatting") {
    CHECK(format_point(Point::scalar(0.5)) == "0.5");
    CHECK(format_point(Point({1.0, -0.25})) == "1;-0.25");
    CHECK(format_point(Point({}, 0.0)) == "|0");
    CHECK(format_point(Point({1.0}, 2.0)) == "1|2");
    CHECK(format_point(Point::scalar(0.5, true)) == "0.5q");
    CHECK(format_point(Point::scalar(0.1 + 0.2)) == "0.30000000000000004");
  }

  TEST_CASE("csv quoting") {
    CsvTable t({"a", "b"});
    t.add({"plain", "with,comma"});
    t.add({"with \"quote\"", ""});
    CHECK(t.rows() == 2);
    CHECK(t.str() == "a,b\nplain,\"with,comma\"\n\"with \"\"quote\"\"\",\n");
  }

  TEST_CASE("traces serialise NaN as null") {
    SolverTrace t;
    t.solver = "picard";
    TraceStep s;
    s.x = Point::scalar(0.5);
    t.steps.push_back(s);
    const auto j = to_json(t);
    CHECK(j.at("steps").size() == 1);
    CHECK(j.at("steps")[0].at("r_est").is_null());
    CHECK(j.at("outcome") == "budget_exhausted");
  }
}
