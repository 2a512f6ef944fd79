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

#ifndef BETALIKE_SCHEMA_H_
#define BETALIKE_SCHEMA_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace betalike {

using NodeId = std::size_t;

// Inclusive range of pre-order leaf ranks.
struct LeafSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first + 1; }
  bool contains(std::size_t rank) const { return first <= rank && rank <= last; }
  friend bool operator==(const LeafSpan&, const LeafSpan&) = default;
};

// Rooted, labeled generalization tree over a categorical domain. Leaves are
// the concrete values; every subtree covers a contiguous run of leaf ranks in
// pre-order, which is what makes a categorical attribute an ordered axis.
class Hierarchy {
 public:
  // Node description used to build a hierarchy. A node without children is
  // a leaf.
  struct Spec {
    std::string label;
    std::vector<Spec> children;
  };

  // Throws InvalidArgument when the root has no children (height 0), labels
  // repeat among leaves, or a label is empty.
  explicit Hierarchy(const Spec& root);

  // Convenience: a height-1 hierarchy `root_label -> leaves`.
  static Hierarchy Flat(std::string root_label,
                        const std::vector<std::string>& leaves);

  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t height() const { return height_; }
  NodeId root() const { return 0; }

  bool has_leaf(std::string_view label) const;
  // Pre-order rank of a leaf. Throws InvalidArgument if `label` is not a leaf.
  std::size_t leaf_preorder_index(std::string_view label) const;
  const std::string& leaf_label(std::size_t rank) const;
  NodeId leaf_node(std::size_t rank) const { return leaves_.at(rank); }

  const std::string& label(NodeId node) const { return nodes_.at(node).label; }
  LeafSpan span(NodeId node) const { return nodes_.at(node).span; }
  bool is_leaf(NodeId node) const { return nodes_.at(node).children.empty(); }
  std::optional<NodeId> parent(NodeId node) const;
  const std::vector<NodeId>& children(NodeId node) const {
    return nodes_.at(node).children;
  }
  // Lookup by label over all nodes (internal labels may repeat; the first
  // node in pre-order wins).
  std::optional<NodeId> find(std::string_view label) const;

  // Deepest node whose subtree covers every leaf rank in [lo, hi].
  NodeId lowest_common_ancestor(std::size_t lo_rank, std::size_t hi_rank) const;

  Spec ToSpec() const;

 private:
  struct Node {
    std::string label;
    NodeId parent;
    std::vector<NodeId> children;
    LeafSpan span;
  };

  NodeId Add(const Spec& spec, NodeId parent, std::size_t depth);

  std::vector<Node> nodes_;
  std::vector<NodeId> leaves_;
  std::unordered_map<std::string, std::size_t> leaf_rank_;
  std::size_t height_ = 0;
};

enum class Role { kQuasiIdentifier, kSensitive };
enum class Kind { kNumerical, kCategorical };

struct AttributeSchema {
  std::string name;
  Role role = Role::kQuasiIdentifier;
  Kind kind = Kind::kNumerical;
  // Numerical domain [lower, upper]; `integral` marks integer-valued data.
  double lower = 0.0;
  double upper = 0.0;
  bool integral = false;
  std::shared_ptr<const Hierarchy> hierarchy;
  std::optional<double> weight;

  static AttributeSchema Numerical(std::string name, double lower,
                                   double upper, bool integral = false);
  static AttributeSchema Categorical(std::string name, Hierarchy hierarchy,
                                     Role role = Role::kQuasiIdentifier);

  bool is_numerical() const { return kind == Kind::kNumerical; }
  // Length of the attribute axis: U - L for numerical, leaf count for
  // categorical.
  double axis_length() const;
};

// A dataset schema: ordered attributes, exactly one of which is the
// categorical sensitive attribute. QI positions keep file order.
class Schema {
 public:
  // Validates every invariant; throws InvalidArgument with the attribute
  // name on violation.
  explicit Schema(std::vector<AttributeSchema> attributes);

  const std::vector<AttributeSchema>& attributes() const { return attributes_; }
  std::size_t qi_count() const { return qi_.size(); }
  // The i-th QI attribute (record position i).
  const AttributeSchema& qi(std::size_t i) const { return attributes_[qi_[i]]; }
  const AttributeSchema& sa() const { return attributes_[sa_]; }
  const Hierarchy& sa_hierarchy() const { return *sa().hierarchy; }
  // QI weights w_i (default 1/d), summing to 1.
  const std::vector<double>& weights() const { return weights_; }
  std::optional<std::size_t> qi_position(std::string_view name) const;

 private:
  std::vector<AttributeSchema> attributes_;
  std::vector<std::size_t> qi_;
  std::size_t sa_ = 0;
  std::vector<double> weights_;
};

// Schema documents are JSON:
//   {"attributes": [
//      {"name": "age", "role": "qi", "kind": "numerical",
//       "min": 0, "max": 120, "integer": true, "weight": 0.5},
//      {"name": "disease", "role": "sa", "kind": "categorical",
//       "hierarchy": {"label": "any", "children": ["flu", {"label": ...}]}}]}
// A hierarchy node is either a string (leaf) or an object with "label" and
// "children"; a bare array of strings is a flat hierarchy under "*".
Schema ParseSchema(std::string_view json_text);
Schema LoadSchema(const std::string& path);
std::string SchemaToJson(const Schema& schema);

}  // namespace betalike

#endif  // BETALIKE_SCHEMA_H_
