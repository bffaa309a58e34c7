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

#include "optikv/predicate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <sstream>

namespace optikv {

std::set<std::string> PredicateSpec::relevant_vars() const {
  std::set<std::string> vars;
  for (const auto& c : clauses)
    for (const auto& l : c.literals) vars.insert(l.var);
  return vars;
}

bool PredicateSpec::watches(const std::string& var) const {
  for (const auto& c : clauses)
    for (const auto& l : c.literals)
      if (l.var == var) return true;
  return false;
}

bool clause_holds(const Clause& clause, const ServerCopy& copy) {
  for (const auto& lit : clause.literals) {
    auto it = copy.find(lit.var);
    if (it == copy.end() || it->second != lit.expected) return false;
  }
  return true;
}

bool evaluate_cut(const PredicateSpec& spec, const CutView& cut) {
  auto covered = [&](const Clause& c) {
    for (const auto& [server, copy] : cut)
      if (clause_holds(c, copy)) return true;
    return false;
  };
  if (spec.connective == Connective::Or) {
    for (const auto& c : spec.clauses)
      if (covered(c)) return true;
    return false;
  }
  for (const auto& c : spec.clauses)
    if (!covered(c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// A minimal XML reader, just enough for the predicate file schema.

namespace {

struct XmlNode {
  std::string tag;
  std::map<std::string, std::string> attrs;
  std::vector<XmlNode> children;
  std::string text;

  const XmlNode* child(const std::string& t) const {
    for (const auto& c : children)
      if (c.tag == t) return &c;
    return nullptr;
  }
};

class XmlReader {
 public:
  explicit XmlReader(const std::string& text) : s_(text) {}

  XmlNode parse() {
    skip_ws();
    XmlNode root = element();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw PredicateParseError("xml: " + what + " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool looking_at(const char* lit) const { return s_.compare(pos_, strlen(lit), lit) == 0; }
  std::string read_name() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }

  XmlNode element() {
    if (pos_ >= s_.size() || s_[pos_] != '<') fail("expected '<'");
    ++pos_;
    XmlNode node;
    node.tag = read_name();
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] != '>' && s_[pos_] != '/') {
      std::string key = read_name();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != '=') fail("expected '=' in attribute");
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail("expected quote");
      char q = s_[pos_++];
      size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != q) ++pos_;
      if (pos_ >= s_.size()) fail("unterminated attribute value");
      node.attrs[key] = s_.substr(start, pos_ - start);
      ++pos_;
      skip_ws();
    }
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      if (pos_ >= s_.size() || s_[pos_] != '>') fail("malformed self-closing tag");
      ++pos_;
      return node;
    }
    if (pos_ >= s_.size()) fail("unterminated start tag");
    ++pos_;  // '>'

    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated element " + node.tag);
      if (looking_at("</")) {
        pos_ += 2;
        std::string closing = read_name();
        if (closing != node.tag) fail("mismatched closing tag " + closing);
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '>') fail("malformed closing tag");
        ++pos_;
        return node;
      }
      if (s_[pos_] == '<') {
        node.children.push_back(element());
      } else {
        size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '<') ++pos_;
        std::string chunk = s_.substr(start, pos_ - start);
        while (!chunk.empty() && std::isspace(static_cast<unsigned char>(chunk.back())))
          chunk.pop_back();
        node.text += chunk;
      }
    }
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

PredicateSpec parse_predicate_xml(const std::string& text) {
  XmlNode root = XmlReader(text).parse();
  if (root.tag != "predicate") throw PredicateParseError("root element must be <predicate>");

  PredicateSpec spec;
  auto conn = root.attrs.find("connective");
  if (conn != root.attrs.end()) {
    if (conn->second == "and") spec.connective = Connective::And;
    else if (conn->second == "or") spec.connective = Connective::Or;
    else throw PredicateParseError("unknown connective '" + conn->second + "'");
  }

  const XmlNode* type = root.child("type");
  if (!type) throw PredicateParseError("missing <type>");
  if (type->text == "linear") spec.kind = PredicateKind::Linear;
  else if (type->text == "semilinear") spec.kind = PredicateKind::Semilinear;
  else throw PredicateParseError("unknown predicate type '" + type->text + "'");

  if (const XmlNode* name = root.child("name")) spec.name = name->text;

  std::set<int> seen_ids;
  for (const auto& child : root.children) {
    if (child.tag != "conjClause") continue;
    Clause clause;
    const XmlNode* id = child.child("id");
    if (!id) throw PredicateParseError("clause without <id>");
    try {
      clause.id = std::stoi(id->text);
    } catch (const std::exception&) {
      throw PredicateParseError("clause id is not an integer");
    }
    if (!seen_ids.insert(clause.id).second)
      throw PredicateParseError("duplicate clause id " + id->text);
    std::set<std::string> vars;
    for (const auto& v : child.children) {
      if (v.tag != "var") continue;
      const XmlNode* n = v.child("name");
      const XmlNode* val = v.child("value");
      if (!n || !val) throw PredicateParseError("var needs <name> and <value>");
      if (n->text.empty()) throw PredicateParseError("empty variable name");
      if (!vars.insert(n->text).second)
        throw PredicateParseError("duplicate variable " + n->text + " within a clause");
      clause.literals.push_back(Literal{n->text, val->text});
    }
    if (clause.literals.empty()) throw PredicateParseError("clause without variables");
    spec.clauses.push_back(std::move(clause));
  }
  if (spec.clauses.empty()) throw PredicateParseError("predicate without clauses");
  return spec;
}

std::string serialize_predicate_xml(const PredicateSpec& spec) {
  std::ostringstream os;
  os << "<predicate";
  if (spec.connective == Connective::And) os << " connective=\"and\"";
  os << ">\n";
  os << "  <type>" << (spec.kind == PredicateKind::Linear ? "linear" : "semilinear")
     << "</type>\n";
  if (!spec.name.empty()) os << "  <name>" << spec.name << "</name>\n";
  for (const auto& c : spec.clauses) {
    os << "  <conjClause>\n    <id>" << c.id << "</id>\n";
    for (const auto& l : c.literals) {
      os << "    <var>\n      <name>" << l.var << "</name> <value>" << l.expected
         << "</value>\n    </var>\n";
    }
    os << "  </conjClause>\n";
  }
  os << "</predicate>\n";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

bool parse_decimal(const std::string& s, int64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string> split_underscore(const std::string& s) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t at = s.find('_', start);
    if (at == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

}  // namespace

PredicateSpec make_mutex_predicate(int64_t a, int64_t b) {
  std::string as = std::to_string(a), bs = std::to_string(b);
  std::string flag_a = "flag" + as + "_" + bs + "_" + as;
  std::string flag_b = "flag" + as + "_" + bs + "_" + bs;
  std::string turn = "turn" + as + "_" + bs;
  PredicateSpec spec;
  spec.name = "mutex_" + as + "_" + bs;
  spec.kind = PredicateKind::Semilinear;
  spec.connective = Connective::And;
  spec.clauses.push_back(Clause{0, {Literal{flag_a, "true"}, Literal{turn, as}}});
  spec.clauses.push_back(Clause{1, {Literal{flag_b, "true"}, Literal{turn, bs}}});
  return spec;
}

std::optional<PredicateSpec> infer_from_varname(const std::string& var) {
  bool is_flag = var.rfind("flag", 0) == 0;
  bool is_turn = var.rfind("turn", 0) == 0;
  if (!is_flag && !is_turn) return std::nullopt;
  auto parts = split_underscore(var.substr(4));
  size_t expected_parts = is_flag ? 3 : 2;
  if (parts.size() != expected_parts) return std::nullopt;
  int64_t a = 0, b = 0, x = 0;
  if (!parse_decimal(parts[0], a) || !parse_decimal(parts[1], b)) return std::nullopt;
  if (is_flag && !parse_decimal(parts[2], x)) return std::nullopt;
  if (a >= b) throw MalformedLockNameError("lock name '" + var + "' needs A < B");
  if (is_flag && x != a && x != b)
    throw MalformedLockNameError("lock name '" + var + "' has a foreign endpoint");
  return make_mutex_predicate(a, b);
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

size_t assign_monitor(const std::string& predicate_name, size_t monitor_count) {
  if (monitor_count == 0) throw std::invalid_argument("monitor_count must be positive");
  return static_cast<size_t>(fnv1a64(predicate_name) % monitor_count);
}

}  // namespace optikv
