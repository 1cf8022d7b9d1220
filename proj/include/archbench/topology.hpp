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

#ifndef ARCHBENCH__TOPOLOGY_HPP_
#define ARCHBENCH__TOPOLOGY_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace archbench
{

/// One publisher, subscriber, service server or client of a node.
struct Endpoint
{
  std::string interface_name;  ///< ROS name, e.g. "/topic"
  std::string interface_type;  ///< ROS interface type, e.g. "std_msgs/msg/String"

  auto operator<=>(const Endpoint &) const = default;
};

struct NodeRecord
{
  std::string name;
  std::vector<Endpoint> publishers;
  std::vector<Endpoint> subscribers;
  std::vector<Endpoint> service_servers;
  std::vector<Endpoint> clients;

  bool operator==(const NodeRecord &) const = default;
};

/// Kinds of entity in a computation graph. Actions are not modelled.
enum class EntityKind
{
  Node,
  Topic,
  Service,
};

std::string_view to_string(EntityKind kind);

struct Entity
{
  std::string name;
  EntityKind kind;

  bool operator==(const Entity &) const = default;
};

struct TopicInfo
{
  std::set<std::string> publishers;
  std::set<std::string> subscribers;
  std::set<std::string> types;
};

struct ServiceInfo
{
  std::set<std::string> servers;
  std::set<std::string> clients;
  std::set<std::string> types;
};

/// A validated, indexed ROS2 computation graph.
///
/// Construction normalizes ordering (nodes by name, endpoints by name then
/// type) so two graphs describing the same system compare equal and
/// serialize to the same bytes. Immutable afterwards.
class Topology
{
public:
  using TopicIndex = std::map<std::string, TopicInfo, std::less<>>;
  using ServiceIndex = std::map<std::string, ServiceInfo, std::less<>>;

  /// Throws TopologyError on empty names, duplicate nodes, duplicate
  /// endpoints within a list, or a name shared by two entity kinds.
  Topology(std::string system_name, std::vector<NodeRecord> nodes);

  const std::string & system_name() const {return system_name_;}
  std::span<const NodeRecord> nodes() const {return nodes_;}
  const TopicIndex & topics() const {return topics_;}
  const ServiceIndex & services() const {return services_;}

  const NodeRecord * find_node(std::string_view name) const;
  const TopicInfo * find_topic(std::string_view name) const;
  const ServiceInfo * find_service(std::string_view name) const;

  /// Kind of the entity called `name`, if any. Names are case-sensitive.
  std::optional<EntityKind> kind_of(std::string_view name) const;

  std::size_t node_count() const {return nodes_.size();}
  std::size_t topic_count() const {return topics_.size();}
  std::size_t service_count() const {return services_.size();}
  std::size_t entity_count() const {return node_count() + topic_count() + service_count();}

  bool operator==(const Topology & other) const
  {
    return system_name_ == other.system_name_ && nodes_ == other.nodes_;
  }

private:
  std::string system_name_;
  std::vector<NodeRecord> nodes_;
  std::map<std::string, std::size_t, std::less<>> node_index_;
  TopicIndex topics_;
  ServiceIndex services_;
};

/// Parses the JSON topology format:
///
///   {"system_name": "...",
///    "nodes": [{"name": "...",
///               "publishers": [{"topic": "...", "type": "..."}],
///               "subscribers": [...],
///               "service_servers": [{"service": "...", "type": "..."}],
///               "clients": [...]}]}
///
/// Absent endpoint arrays are empty. Throws TopologyError.
Topology parse_topology(std::string_view json_text);

Topology load_topology(const std::filesystem::path & path);

/// Canonical JSON for `topo`; byte-stable for equal topologies.
std::string serialize_topology(const Topology & topo, int indent = 2);

/// Every entity: nodes, then topics, then services, each in lexicographic order.
std::vector<Entity> entities(const Topology & topo);

}  // namespace archbench

#endif  // ARCHBENCH__TOPOLOGY_HPP_
