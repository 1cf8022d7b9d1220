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

#include "archbench/graph_oracle.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "archbench/errors.hpp"

namespace archbench
{

namespace
{

const NodeRecord & require_node(const Topology & topo, std::string_view name)
{
  const NodeRecord * node = topo.find_node(name);
  if (node == nullptr) {
    throw OracleError(fmt::format("'{}' is not a node of '{}'", name, topo.system_name()));
  }
  return *node;
}

const TopicInfo & require_topic(const Topology & topo, std::string_view name)
{
  const TopicInfo * topic = topo.find_topic(name);
  if (topic == nullptr) {
    throw OracleError(fmt::format("'{}' is not a topic of '{}'", name, topo.system_name()));
  }
  return *topic;
}

const ServiceInfo & require_service(const Topology & topo, std::string_view name)
{
  const ServiceInfo * service = topo.find_service(name);
  if (service == nullptr) {
    throw OracleError(fmt::format("'{}' is not a service of '{}'", name, topo.system_name()));
  }
  return *service;
}

NameSetAnswer names_of(const std::vector<Endpoint> & endpoints)
{
  NameSetAnswer out;
  for (const auto & ep : endpoints) {
    out.names.insert(ep.interface_name);
  }
  return out;
}

template<typename T>
bool intersects(const std::set<T> & a, const std::set<T> & b)
{
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

int option_index(EntityKind kind)
{
  switch (kind) {
    case EntityKind::Topic: return 1;
    case EntityKind::Service: return 2;
    case EntityKind::Node: return 3;
  }
  throw OracleError("invalid entity kind");
}

EntityKind option_kind(int index)
{
  switch (index) {
    case 1: return EntityKind::Topic;
    case 2: return EntityKind::Service;
    case 3: return EntityKind::Node;
    default: throw OracleError(fmt::format("option index {} out of range 1..3", index));
  }
}

std::string_view option_text(int index)
{
  switch (option_kind(index)) {
    case EntityKind::Topic: return "a ROS topic";
    case EntityKind::Service: return "a ROS service";
    case EntityKind::Node: return "a ROS node";
  }
  return {};
}

std::string canonical_text(const Answer & answer)
{
  struct Visitor
  {
    std::string operator()(const BoolAnswer & a) const {return a.value ? "Yes" : "No";}
    std::string operator()(const OptionAnswer & a) const {return std::to_string(a.index);}
    std::string operator()(const NameSetAnswer & a) const
    {
      return a.names.empty() ? std::string("None") : fmt::format("{}", fmt::join(a.names, ", "));
    }
    std::string operator()(const TypeSetAnswer & a) const
    {
      return fmt::format("{}", fmt::join(a.types, ", "));
    }
  };
  return std::visit(Visitor{}, answer);
}

namespace oracle
{

BoolAnswer entity_exists(const Topology & topo, std::string_view name)
{
  return {topo.kind_of(name).has_value()};
}

OptionAnswer entity_kind(const Topology & topo, std::string_view name)
{
  auto kind = topo.kind_of(name);
  if (!kind) {
    throw OracleError(fmt::format("unknown entity '{}'", name));
  }
  return {option_index(*kind)};
}

BoolAnswer publishes(const Topology & topo, std::string_view node, std::string_view topic)
{
  require_node(topo, node);
  const auto & info = require_topic(topo, topic);
  return {info.publishers.contains(std::string(node))};
}

BoolAnswer subscribed(const Topology & topo, std::string_view node, std::string_view topic)
{
  require_node(topo, node);
  const auto & info = require_topic(topo, topic);
  return {info.subscribers.contains(std::string(node))};
}

BoolAnswer provides(const Topology & topo, std::string_view node, std::string_view service)
{
  require_node(topo, node);
  const auto & info = require_service(topo, service);
  return {info.servers.contains(std::string(node))};
}

BoolAnswer is_client(const Topology & topo, std::string_view node, std::string_view service)
{
  require_node(topo, node);
  const auto & info = require_service(topo, service);
  return {info.clients.contains(std::string(node))};
}

NameSetAnswer topics_published(const Topology & topo, std::string_view node)
{
  return names_of(require_node(topo, node).publishers);
}

NameSetAnswer topics_subscribed(const Topology & topo, std::string_view node)
{
  return names_of(require_node(topo, node).subscribers);
}

NameSetAnswer services_provided(const Topology & topo, std::string_view node)
{
  return names_of(require_node(topo, node).service_servers);
}

NameSetAnswer services_client(const Topology & topo, std::string_view node)
{
  return names_of(require_node(topo, node).clients);
}

BoolAnswer has_comm_path(
  const Topology & topo, std::string_view from, std::string_view to,
  const OracleOptions & options)
{
  require_node(topo, from);
  require_node(topo, to);
  if (from == to) {
    throw OracleError(fmt::format("communication path from '{}' to itself is undefined", from));
  }
  if (intersects(topics_published(topo, from).names, topics_subscribed(topo, to).names)) {
    return {true};
  }
  if (intersects(services_client(topo, from).names, services_provided(topo, to).names)) {
    return {true};
  }
  if (options.service_response_paths &&
    intersects(services_provided(topo, from).names, services_client(topo, to).names))
  {
    return {true};
  }
  return {false};
}

TypeSetAnswer topic_type(const Topology & topo, std::string_view topic)
{
  return {require_topic(topo, topic).types};
}

TypeSetAnswer service_type(const Topology & topo, std::string_view service)
{
  return {require_service(topo, service).types};
}

}  // namespace oracle

}  // namespace archbench
