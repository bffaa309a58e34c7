/*
 * Copyright 2026 The OptiKV Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include "optikv/predicate.hpp"

using namespace optikv;

namespace {

const char* kFig3 = R"(
<predicate>
  <type>semilinear</type>
  <conjClause>
    <id>0</id>
    <var>
      <name>x2</name> <value>1</value>
    </var>
    <var>
      <name>y2</name> <value>1</value>
    </var>
  </conjClause>
  <conjClause>
    <id>1</id>
    <var>
      <name>z2</name> <value>1</value>
    </var>
  </conjClause>
</predicate>
)";

}  // namespace

TEST_CASE("the two-clause example document parses") {
  auto spec = parse_predicate_xml(kFig3);
  CHECK(spec.kind == PredicateKind::Semilinear);
  CHECK(spec.connective == Connective::Or);
  REQUIRE(spec.clauses.size() == 2);
  CHECK(spec.clauses[0].literals ==
        std::vector<Literal>{{"x2", "1"}, {"y2", "1"}});
  CHECK(spec.clauses[1].literals == std::vector<Literal>{{"z2", "1"}});
  CHECK(spec.relevant_vars() == std::set<std::string>{"x2", "y2", "z2"});
}

TEST_CASE("serialize-parse round trip is the identity") {
  auto spec = parse_predicate_xml(kFig3);
  CHECK(parse_predicate_xml(serialize_predicate_xml(spec)) == spec);

  auto mutex = make_mutex_predicate(12, 57);
  CHECK(parse_predicate_xml(serialize_predicate_xml(mutex)) == mutex);
}

TEST_CASE("bad documents are rejected") {
  CHECK_THROWS_AS((void)parse_predicate_xml("<predicate><type>bogus</type>"
                                            "<conjClause><id>0</id><var><name>x</name>"
                                            "<value>1</value></var></conjClause></predicate>"),
                  PredicateParseError);
  CHECK_THROWS_AS((void)parse_predicate_xml("<predicate><type>linear</type></predicate>"),
                  PredicateParseError);
  // duplicate clause ids
  CHECK_THROWS_AS((void)parse_predicate_xml(
                      "<predicate><type>linear</type>"
                      "<conjClause><id>0</id><var><name>x</name><value>1</value></var></conjClause>"
                      "<conjClause><id>0</id><var><name>y</name><value>1</value></var></conjClause>"
                      "</predicate>"),
                  PredicateParseError);
}

TEST_CASE("evaluate_cut with the or connective needs one clause at one server") {
  auto spec = parse_predicate_xml(kFig3);
  CutView cut;
  cut[0] = {{"x2", "1"}};
  cut[1] = {{"z2", "0"}};
  CHECK(!evaluate_cut(spec, cut));
  cut[1]["z2"] = "1";
  CHECK(evaluate_cut(spec, cut));
  // a fully matching clause at a single server also suffices
  CutView solo;
  solo[2] = {{"x2", "1"}, {"y2", "1"}};
  CHECK(evaluate_cut(spec, solo));
}

TEST_CASE("evaluate_cut with the and connective allows servers to differ per clause") {
  auto spec = make_mutex_predicate(1, 2);
  CutView cut;
  cut[0] = {{"flag1_2_1", "true"}, {"turn1_2", "1"}};
  cut[1] = {{"flag1_2_2", "true"}, {"turn1_2", "2"}};
  CHECK(evaluate_cut(spec, cut));

  // one copy cannot satisfy both clauses: turn has a single value
  CutView solo;
  solo[0] = {{"flag1_2_1", "true"}, {"flag1_2_2", "true"}, {"turn1_2", "1"}};
  CHECK(!evaluate_cut(spec, solo));
}

TEST_CASE("or-evaluation is monotone under adding servers") {
  auto spec = parse_predicate_xml(kFig3);
  CutView small;
  small[0] = {{"z2", "1"}};
  CutView larger = small;
  larger[1] = {{"x2", "0"}};
  larger[2] = {};
  CHECK(evaluate_cut(spec, small));
  CHECK(evaluate_cut(spec, larger));
}

TEST_CASE("lock predicates are inferred from any of the three variable names") {
  auto from_turn = infer_from_varname("turn12_57");
  REQUIRE(from_turn.has_value());
  CHECK(from_turn->name == "mutex_12_57");
  CHECK(from_turn->kind == PredicateKind::Semilinear);
  CHECK(from_turn->connective == Connective::And);
  REQUIRE(from_turn->clauses.size() == 2);
  CHECK(from_turn->clauses[0].literals ==
        std::vector<Literal>{{"flag12_57_12", "true"}, {"turn12_57", "12"}});
  CHECK(from_turn->clauses[1].literals ==
        std::vector<Literal>{{"flag12_57_57", "true"}, {"turn12_57", "57"}});
  CHECK(from_turn->relevant_vars().size() == 3);

  CHECK(infer_from_varname("flag12_57_12") == from_turn);
  CHECK(infer_from_varname("flag12_57_57") == from_turn);
}

TEST_CASE("unrelated names yield nothing; broken lock names are errors") {
  CHECK(!infer_from_varname("color99").has_value());
  CHECK(!infer_from_varname("flagship").has_value());
  CHECK(!infer_from_varname("turnip_stew").has_value());
  CHECK_THROWS_AS((void)infer_from_varname("turn57_12"), MalformedLockNameError);
  CHECK_THROWS_AS((void)infer_from_varname("flag12_57_9"), MalformedLockNameError);
  CHECK_THROWS_AS((void)infer_from_varname("flag7_7_7"), MalformedLockNameError);
}

TEST_CASE("monitor assignment is deterministic and balanced") {
  CHECK(assign_monitor("mutex_1_2", 1) == 0);
  CHECK(assign_monitor("mutex_1_2", 7) == assign_monitor("mutex_1_2", 7));

  std::vector<int> buckets(3, 0);
  int total = 10000;
  for (int i = 0; i < total; ++i) {
    auto name = "mutex_" + std::to_string(i) + "_" + std::to_string(i + 1);
    ++buckets[assign_monitor(name, 3)];
  }
  for (int b : buckets) {
    CHECK(b > total / 3 * 0.9);
    CHECK(b < total / 3 * 1.1);
  }
}
