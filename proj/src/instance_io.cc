// Copyright 2026 The contractlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "contractlab/instance_io.h"

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "contractlab/numeric.h"
#include "json.hpp"

namespace contractlab {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw InstanceFormatError("instance schema error at " + path + ": " + what);
}

void CheckKeys(const json& object, const std::string& path,
               const std::set<std::string>& allowed) {
  if (!object.is_object()) Fail(path, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) Fail(path, "unknown key \"" + key + "\"");
  }
}

const json& Require(const json& object, const std::string& path,
                    const std::string& key) {
  auto it = object.find(key);
  if (it == object.end()) Fail(path, "missing key \"" + key + "\"");
  return *it;
}

double Number(const json& value, const std::string& path) {
  if (!value.is_number()) Fail(path, "expected a number");
  return value.get<double>();
}

std::vector<double> Numbers(const json& value, const std::string& path) {
  if (!value.is_array()) Fail(path, "expected an array");
  std::vector<double> out;
  for (size_t i = 0; i < value.size(); ++i) {
    out.push_back(Number(value[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string LineContext(std::string_view text, size_t byte) {
  size_t line = 1;
  size_t column = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  size_t start = text.rfind('\n', byte > 0 ? byte - 1 : 0);
  start = start == std::string_view::npos ? 0 : start + 1;
  if (byte == 0) start = 0;
  size_t end = text.find('\n', start);
  std::string snippet(text.substr(start, end == std::string_view::npos
                                             ? std::string_view::npos
                                             : end - start));
  return "line " + std::to_string(line) + ", column " +
         std::to_string(column) + ": " + snippet;
}

}  // namespace

AnyInstance ParseInstance(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InstanceFormatError("instance parse error at " +
                              LineContext(text, e.byte > 0 ? e.byte - 1 : 0) +
                              " (" + e.what() + ")");
  }
  CheckKeys(doc, "$", {"m", "values", "actions", "ccdf", "cost_max"});
  const json& m_value = Require(doc, "$", "m");
  if (!m_value.is_number_integer()) Fail("$.m", "expected an integer");
  const int m = m_value.get<int>();
  OutcomeSpace outcomes{Numbers(Require(doc, "$", "values"), "$.values")};
  if (outcomes.size() != m) {
    Fail("$.values", "has " + std::to_string(outcomes.size()) +
                         " entries but m = " + std::to_string(m));
  }
  bool finite = doc.contains("actions");
  bool ccdf = doc.contains("ccdf");
  if (finite == ccdf) Fail("$", "need exactly one of \"actions\" or \"ccdf\"");
  if (finite) {
    if (doc.contains("cost_max")) Fail("$", "\"cost_max\" only applies to ccdf");
    const json& actions = doc["actions"];
    if (!actions.is_array()) Fail("$.actions", "expected an array");
    FiniteInstance out;
    out.outcomes = outcomes;
    for (size_t a = 0; a < actions.size(); ++a) {
      std::string path = "$.actions[" + std::to_string(a) + "]";
      CheckKeys(actions[a], path, {"cost", "pmf"});
      Action action;
      action.cost = Number(Require(actions[a], path, "cost"), path + ".cost");
      action.pmf = Numbers(Require(actions[a], path, "pmf"), path + ".pmf");
      out.actions.push_back(std::move(action));
    }
    if (options.insert_null_action && !FindNullAction(out)) {
      Action null_action;
      null_action.pmf.assign(m, 0.0);
      if (m > 0) null_action.pmf[0] = 1;
      out.actions.insert(out.actions.begin(), null_action);
    }
    return out;
  }
  CcdfInstance out;
  out.outcomes = outcomes;
  out.cost_max = Number(Require(doc, "$", "cost_max"), "$.cost_max");
  const json& curves = doc["ccdf"];
  if (!curves.is_array()) Fail("$.ccdf", "expected an array");
  if (static_cast<int>(curves.size()) != m - 1) {
    Fail("$.ccdf", "expected m-1 = " + std::to_string(m - 1) + " curves");
  }
  for (size_t w = 0; w < curves.size(); ++w) {
    std::string path = "$.ccdf[" + std::to_string(w) + "]";
    if (!curves[w].is_array()) Fail(path, "expected an array");
    std::vector<Breakpoint> points;
    for (size_t k = 0; k < curves[w].size(); ++k) {
      std::string point_path = path + "[" + std::to_string(k) + "]";
      CheckKeys(curves[w][k], point_path, {"cost", "value"});
      points.push_back(
          {Number(Require(curves[w][k], point_path, "cost"), point_path + ".cost"),
           Number(Require(curves[w][k], point_path, "value"),
                  point_path + ".value")});
    }
    try {
      out.ccdf.emplace_back(std::move(points));
    } catch (const std::invalid_argument& e) {
      Fail(path, e.what());
    }
  }
  return out;
}

AnyInstance LoadInstance(const std::string& path, const LoadOptions& options) {
  std::string text = ReadFile(path);
  try {
    return ParseInstance(text, options);
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(path + ": " + e.what());
  }
}

std::string SerializeInstance(const FiniteInstance& instance) {
  json doc;
  doc["m"] = instance.num_outcomes();
  doc["values"] = instance.outcomes.values;
  doc["actions"] = json::array();
  for (const Action& a : instance.actions) {
    doc["actions"].push_back({{"cost", a.cost}, {"pmf", a.pmf}});
  }
  return doc.dump(2) + "\n";
}

std::string SerializeInstance(const CcdfInstance& instance) {
  json doc;
  doc["m"] = instance.num_outcomes();
  doc["values"] = instance.outcomes.values;
  doc["cost_max"] = instance.cost_max;
  doc["ccdf"] = json::array();
  for (const PiecewiseLinearFn& f : instance.ccdf) {
    json curve = json::array();
    for (const Breakpoint& p : f.breakpoints()) {
      curve.push_back({{"cost", p.x}, {"value", p.y}});
    }
    doc["ccdf"].push_back(std::move(curve));
  }
  return doc.dump(2) + "\n";
}

void SaveInstance(const std::string& path, const FiniteInstance& instance) {
  WriteFile(path, SerializeInstance(instance));
}

void SaveInstance(const std::string& path, const CcdfInstance& instance) {
  WriteFile(path, SerializeInstance(instance));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace contractlab
