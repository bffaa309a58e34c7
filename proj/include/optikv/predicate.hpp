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

#ifndef OPTIKV_PREDICATE_HPP_
#define OPTIKV_PREDICATE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "optikv/hvc.hpp"

namespace optikv {

struct PredicateParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedLockNameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Equality test of one replicated variable against a literal string value.
struct Literal {
  std::string var;
  std::string expected;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  int id = 0;
  std::vector<Literal> literals;  // conjunction, distinct vars

  friend bool operator==(const Clause&, const Clause&) = default;
};

enum class PredicateKind { Linear, Semilinear };
enum class Connective { Or, And };

/// The detected condition (the negation of the property to preserve) in
/// disjunctive/conjunctive normal form over replicated variables.
struct PredicateSpec {
  std::string name;
  PredicateKind kind = PredicateKind::Semilinear;
  Connective connective = Connective::Or;
  std::vector<Clause> clauses;

  std::set<std::string> relevant_vars() const;
  bool watches(const std::string& var) const;

  friend bool operator==(const PredicateSpec&, const PredicateSpec&) = default;
};

/// One server's replica copies of the variables relevant to a predicate.
using ServerCopy = std::map<std::string, std::string>;

/// A cut: each participating server's copies at its chosen local state.
using CutView = std::map<NodeId, ServerCopy>;

/// A clause holds at one server iff every literal matches that copy; a
/// missing variable makes the literal false.
bool clause_holds(const Clause& clause, const ServerCopy& copy);

/// Or: some clause holds at some server. And: every clause holds at at least
/// one server, servers may differ per clause.
bool evaluate_cut(const PredicateSpec& spec, const CutView& cut);

PredicateSpec parse_predicate_xml(const std::string& text);
std::string serialize_predicate_xml(const PredicateSpec& spec);

/// Peterson edge-lock predicate inference from store variable names
/// (flag<A>_<B>_<X> or turn<A>_<B> with decimal A < B and X one of A, B).
/// Names outside the grammar yield nothing; names with the right shape but
/// A >= B or a foreign X throw MalformedLockNameError.
std::optional<PredicateSpec> infer_from_varname(const std::string& var);

/// The Peterson predicate for edge (a, b), a < b.
PredicateSpec make_mutex_predicate(int64_t a, int64_t b);

uint64_t fnv1a64(const std::string& s);

/// Stable predicate-to-monitor sharding by name hash.
size_t assign_monitor(const std::string& predicate_name, size_t monitor_count);

}  // namespace optikv

#endif  // OPTIKV_PREDICATE_HPP_
