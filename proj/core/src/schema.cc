//
// Copyright 2026 The betalike Authors
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
//

#include "betalike/schema.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "betalike/errors.h"
#include "schema_json.h"

namespace betalike {
namespace {

using nlohmann::json;

Hierarchy::Spec SpecFromJson(const json& node, const std::string& attr) {
  if (node.is_string()) return {node.get<std::string>(), {}};
  if (node.is_array()) {
    Hierarchy::Spec root{"*", {}};
    for (const auto& child : node) root.children.push_back(SpecFromJson(child, attr));
    return root;
  }
  if (!node.is_object() || !node.contains("label")) {
    throw InvalidArgument("attribute '" + attr +
                          "': hierarchy node must be a string or an object "
                          "with a \"label\"");
  }
  Hierarchy::Spec spec{node.at("label").get<std::string>(), {}};
  if (node.contains("children")) {
    for (const auto& child : node.at("children")) {
      spec.children.push_back(SpecFromJson(child, attr));
    }
  }
  return spec;
}

json SpecToJson(const Hierarchy::Spec& spec) {
  if (spec.children.empty()) return spec.label;
  json children = json::array();
  for (const auto& child : spec.children) children.push_back(SpecToJson(child));
  return json{{"label", spec.label}, {"children", std::move(children)}};
}

}  // namespace

Hierarchy::Hierarchy(const Spec& root) {
  if (root.children.empty()) {
    throw InvalidArgument("hierarchy '" + root.label +
                          "' must have height >= 1 (root needs children)");
  }
  Add(root, 0, 0);
}

Hierarchy Hierarchy::Flat(std::string root_label,
                          const std::vector<std::string>& leaves) {
  Spec spec{std::move(root_label), {}};
  for (const auto& leaf : leaves) spec.children.push_back({leaf, {}});
  return Hierarchy(spec);
}

NodeId Hierarchy::Add(const Spec& spec, NodeId parent, std::size_t depth) {
  if (spec.label.empty()) throw InvalidArgument("hierarchy label is empty");
  const NodeId id = nodes_.size();
  nodes_.push_back(Node{spec.label, parent, {}, {}});
  height_ = std::max(height_, depth);
  if (spec.children.empty()) {
    const std::size_t rank = leaves_.size();
    if (!leaf_rank_.emplace(spec.label, rank).second) {
      throw InvalidArgument("hierarchy leaf '" + spec.label + "' repeats");
    }
    leaves_.push_back(id);
    nodes_[id].span = {rank, rank};
    return id;
  }
  const std::size_t first = leaves_.size();
  for (const auto& child : spec.children) {
    const NodeId child_id = Add(child, id, depth + 1);
    nodes_[id].children.push_back(child_id);
  }
  nodes_[id].span = {first, leaves_.size() - 1};
  return id;
}

bool Hierarchy::has_leaf(std::string_view label) const {
  return leaf_rank_.find(std::string(label)) != leaf_rank_.end();
}

std::size_t Hierarchy::leaf_preorder_index(std::string_view label) const {
  auto it = leaf_rank_.find(std::string(label));
  if (it == leaf_rank_.end()) {
    throw InvalidArgument("'" + std::string(label) + "' is not a leaf of '" +
                          nodes_.front().label + "'");
  }
  return it->second;
}

const std::string& Hierarchy::leaf_label(std::size_t rank) const {
  return nodes_[leaves_.at(rank)].label;
}

std::optional<NodeId> Hierarchy::parent(NodeId node) const {
  if (node == root()) return std::nullopt;
  return nodes_.at(node).parent;
}

std::optional<NodeId> Hierarchy::find(std::string_view label) const {
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].label == label) return id;
  }
  return std::nullopt;
}

NodeId Hierarchy::lowest_common_ancestor(std::size_t lo_rank,
                                         std::size_t hi_rank) const {
  if (lo_rank > hi_rank) std::swap(lo_rank, hi_rank);
  if (hi_rank >= leaves_.size()) throw InvalidArgument("leaf rank out of range");
  NodeId node = leaves_[lo_rank];
  while (!nodes_[node].span.contains(hi_rank)) node = nodes_[node].parent;
  return node;
}

Hierarchy::Spec Hierarchy::ToSpec() const {
  // Rebuild recursively from the root.
  auto build = [this](auto&& self, NodeId id) -> Spec {
    Spec spec{nodes_[id].label, {}};
    for (NodeId child : nodes_[id].children) spec.children.push_back(self(self, child));
    return spec;
  };
  return build(build, root());
}

AttributeSchema AttributeSchema::Numerical(std::string name, double lower,
                                           double upper, bool integral) {
  AttributeSchema attr;
  attr.name = std::move(name);
  attr.kind = Kind::kNumerical;
  attr.lower = lower;
  attr.upper = upper;
  attr.integral = integral;
  return attr;
}

AttributeSchema AttributeSchema::Categorical(std::string name,
                                             Hierarchy hierarchy, Role role) {
  AttributeSchema attr;
  attr.name = std::move(name);
  attr.role = role;
  attr.kind = Kind::kCategorical;
  attr.hierarchy = std::make_shared<const Hierarchy>(std::move(hierarchy));
  return attr;
}

double AttributeSchema::axis_length() const {
  if (is_numerical()) return upper - lower;
  return static_cast<double>(hierarchy->leaf_count());
}

Schema::Schema(std::vector<AttributeSchema> attributes)
    : attributes_(std::move(attributes)) {
  std::optional<std::size_t> sa;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const auto& attr = attributes_[i];
    if (attr.name.empty()) throw InvalidArgument("attribute with empty name");
    for (std::size_t j = 0; j < i; ++j) {
      if (attributes_[j].name == attr.name) {
        throw InvalidArgument("attribute '" + attr.name + "' declared twice");
      }
    }
    if (attr.is_numerical()) {
      if (!std::isfinite(attr.lower) || !std::isfinite(attr.upper) ||
          !(attr.lower < attr.upper)) {
        throw InvalidArgument("attribute '" + attr.name +
                              "': numerical domain needs min < max");
      }
    } else if (attr.hierarchy == nullptr || attr.hierarchy->leaf_count() == 0) {
      throw InvalidArgument("attribute '" + attr.name +
                            "': categorical attribute needs a hierarchy");
    }
    if (attr.role == Role::kSensitive) {
      if (sa) {
        throw InvalidArgument("attribute '" + attr.name +
                              "': only one sensitive attribute is allowed");
      }
      if (attr.is_numerical()) {
        throw InvalidArgument("attribute '" + attr.name +
                              "': the sensitive attribute must be categorical");
      }
      sa = i;
    } else {
      qi_.push_back(i);
    }
  }
  if (!sa) throw InvalidArgument("schema has no sensitive attribute");
  if (qi_.empty()) throw InvalidArgument("schema has no quasi-identifier");
  sa_ = *sa;

  std::size_t given = 0;
  double sum = 0.0;
  for (std::size_t q : qi_) {
    if (const auto& w = attributes_[q].weight) {
      if (!(*w >= 0.0)) {
        throw InvalidArgument("attribute '" + attributes_[q].name +
                              "': weight must be >= 0");
      }
      ++given;
      sum += *w;
    }
  }
  if (given == 0) {
    weights_.assign(qi_.size(), 1.0 / static_cast<double>(qi_.size()));
  } else if (given != qi_.size()) {
    throw InvalidArgument("weights must be given for every QI attribute or none");
  } else {
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidArgument("QI weights must sum to 1");
    }
    for (std::size_t q : qi_) weights_.push_back(*attributes_[q].weight);
  }
}

std::optional<std::size_t> Schema::qi_position(std::string_view name) const {
  for (std::size_t i = 0; i < qi_.size(); ++i) {
    if (attributes_[qi_[i]].name == name) return i;
  }
  return std::nullopt;
}

namespace internal {

Schema SchemaFromJsonValue(const json& doc) {
  if (!doc.is_object() || !doc.contains("attributes") ||
      !doc.at("attributes").is_array()) {
    throw InvalidArgument("schema document needs an \"attributes\" array");
  }
  std::vector<AttributeSchema> attrs;
  for (const auto& item : doc.at("attributes")) {
    const std::string name = item.value("name", "");
    const std::string role = item.value("role", "qi");
    const std::string kind = item.value("kind", "");
    AttributeSchema attr;
    attr.name = name;
    if (role == "qi") {
      attr.role = Role::kQuasiIdentifier;
    } else if (role == "sa") {
      attr.role = Role::kSensitive;
    } else {
      throw InvalidArgument("attribute '" + name + "': unknown role '" + role + "'");
    }
    if (kind == "numerical") {
      attr.kind = Kind::kNumerical;
      if (!item.contains("min") || !item.contains("max")) {
        throw InvalidArgument("attribute '" + name + "': numerical needs min and max");
      }
      attr.lower = item.at("min").get<double>();
      attr.upper = item.at("max").get<double>();
      attr.integral = item.value("integer", false);
    } else if (kind == "categorical") {
      attr.kind = Kind::kCategorical;
      if (!item.contains("hierarchy")) {
        throw InvalidArgument("attribute '" + name + "': categorical needs a hierarchy");
      }
      attr.hierarchy = std::make_shared<const Hierarchy>(
          SpecFromJson(item.at("hierarchy"), name));
    } else {
      throw InvalidArgument("attribute '" + name + "': unknown kind '" + kind + "'");
    }
    if (item.contains("weight")) attr.weight = item.at("weight").get<double>();
    attrs.push_back(std::move(attr));
  }
  return Schema(std::move(attrs));
}

json SchemaToJsonValue(const Schema& schema) {
  json attrs = json::array();
  for (const auto& attr : schema.attributes()) {
    json item{{"name", attr.name},
              {"role", attr.role == Role::kSensitive ? "sa" : "qi"}};
    if (attr.is_numerical()) {
      item["kind"] = "numerical";
      item["min"] = attr.lower;
      item["max"] = attr.upper;
      if (attr.integral) item["integer"] = true;
    } else {
      item["kind"] = "categorical";
      item["hierarchy"] = SpecToJson(attr.hierarchy->ToSpec());
    }
    if (attr.weight) item["weight"] = *attr.weight;
    attrs.push_back(std::move(item));
  }
  return json{{"attributes", std::move(attrs)}};
}

}  // namespace internal

Schema ParseSchema(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("schema: ") + e.what());
  }
  try {
    return internal::SchemaFromJsonValue(doc);
  } catch (const json::exception& e) {
    throw DataError(std::string("schema: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("schema: ") + e.what());
  }
}

Schema LoadSchema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open schema");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseSchema(buffer.str());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string SchemaToJson(const Schema& schema) {
  return internal::SchemaToJsonValue(schema).dump(2);
}

}  // namespace betalike
