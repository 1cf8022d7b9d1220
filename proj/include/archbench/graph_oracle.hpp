// Copyright 2026 The archbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARCHBENCH__GRAPH_ORACLE_HPP_
#define ARCHBENCH__GRAPH_ORACLE_HPP_

#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "archbench/topology.hpp"

namespace archbench
{

struct BoolAnswer
{
  bool value;
  bool operator==(const BoolAnswer &) const = default;
};

/// Multiple-choice answer. Options are listed as 1- topic, 2- service, 3- node.
struct OptionAnswer
{
  int index;
  bool operator==(const OptionAnswer &) const = default;
};

struct NameSetAnswer
{
  std::set<std::string> names;
  bool operator==(const NameSetAnswer &) const = default;
};

struct TypeSetAnswer
{
  std::set<std::string> types;
  bool operator==(const TypeSetAnswer &) const = default;
};

using Answer = std::variant<BoolAnswer, OptionAnswer, NameSetAnswer, TypeSetAnswer>;

int option_index(EntityKind kind);
EntityKind option_kind(int index);

/// Text of each multiple-choice option, e.g. "a ROS topic" for option 1.
std::string_view option_text(int index);

/// The answer written the way a correct response would state it:
/// "Yes"/"No", the option digit, a comma-separated name list ("None" when
/// empty), or the type name.
std::string canonical_text(const Answer & answer);

struct OracleOptions
{
  /// Also count service server -> client (the response direction) as a path.
  bool service_response_paths = false;
};

namespace oracle
{

BoolAnswer entity_exists(const Topology & topo, std::string_view name);

/// Throws OracleError for an unknown entity.
OptionAnswer entity_kind(const Topology & topo, std::string_view name);

// Membership tests. Throw OracleError when `node` is not a node or the
// interface is not a topic/service respectively.
BoolAnswer publishes(const Topology & topo, std::string_view node, std::string_view topic);
BoolAnswer subscribed(const Topology & topo, std::string_view node, std::string_view topic);
BoolAnswer provides(const Topology & topo, std::string_view node, std::string_view service);
BoolAnswer is_client(const Topology & topo, std::string_view node, std::string_view service);

NameSetAnswer topics_published(const Topology & topo, std::string_view node);
NameSetAnswer topics_subscribed(const Topology & topo, std::string_view node);
NameSetAnswer services_provided(const Topology & topo, std::string_view node);
NameSetAnswer services_client(const Topology & topo, std::string_view node);

/// Single-hop directed path: `from` publishes a topic `to` subscribes to, or
/// `from` is a client of a service `to` provides. "/parameter_events" is an
/// ordinary topic here. `from == to` is a caller error.
BoolAnswer has_comm_path(
  const Topology & topo, std::string_view from, std::string_view to,
  const OracleOptions & options = {});

TypeSetAnswer topic_type(const Topology & topo, std::string_view topic);
TypeSetAnswer service_type(const Topology & topo, std::string_view service);

}  // namespace oracle

}  // namespace archbench

#endif  // ARCHBENCH__GRAPH_ORACLE_HPP_
