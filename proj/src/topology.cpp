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

#include "archbench/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

#include "archbench/errors.hpp"

namespace archbench
{

namespace
{

using nlohmann::json;
using nlohmann::ordered_json;

void normalize_endpoints(
  std::vector<Endpoint> & endpoints, std::string_view node, std::string_view list)
{
  std::sort(endpoints.begin(), endpoints.end());
  for (const auto & ep : endpoints) {
    if (ep.interface_name.empty() || ep.interface_type.empty()) {
      throw TopologyError(
              fmt::format("node '{}': {} entry with empty name or type", node, list));
    }
  }
  auto dup = std::adjacent_find(endpoints.begin(), endpoints.end());
  if (dup != endpoints.end()) {
    throw TopologyError(
            fmt::format(
              "node '{}': duplicate {} entry '{}' ({})", node, list,
              dup->interface_name, dup->interface_type));
  }
}

const json & require(const json & obj, const char * key, std::string_view where)
{
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw TopologyError(fmt::format("{}: missing field '{}'", where, key));
  }
  return *it;
}

std::string require_string(const json & obj, const char * key, std::string_view where)
{
  const json & value = require(obj, key, where);
  if (!value.is_string()) {
    throw TopologyError(fmt::format("{}: field '{}' must be a string", where, key));
  }
  return value.get<std::string>();
}

std::vector<Endpoint> parse_endpoints(
  const json & node, const char * list, const char * name_key, std::string_view node_name)
{
  std::vector<Endpoint> out;
  auto it = node.find(list);
  if (it == node.end() || it->is_null()) {
    return out;
  }
  if (!it->is_array()) {
    throw TopologyError(fmt::format("node '{}': '{}' must be an array", node_name, list));
  }
  const std::string where = fmt::format("node '{}' {}", node_name, list);
  for (const json & entry : *it) {
    if (!entry.is_object()) {
      throw TopologyError(where + ": entries must be objects");
    }
    out.push_back({require_string(entry, name_key, where), require_string(entry, "type", where)});
  }
  return out;
}

ordered_json endpoints_to_json(const std::vector<Endpoint> & endpoints, const char * name_key)
{
  ordered_json out = ordered_json::array();
  for (const auto & ep : endpoints) {
    ordered_json entry;
    entry[name_key] = ep.interface_name;
    entry["type"] = ep.interface_type;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

std::string_view to_string(EntityKind kind)
{
  switch (kind) {
    case EntityKind::Node: return "NODE";
    case EntityKind::Topic: return "TOPIC";
    case EntityKind::Service: return "SERVICE";
  }
  return "UNKNOWN";
}

Topology::Topology(std::string system_name, std::vector<NodeRecord> nodes)
: system_name_(std::move(system_name)),
  nodes_(std::move(nodes))
{
  if (system_name_.empty()) {
    throw TopologyError("system_name must not be empty");
  }
  std::sort(
    nodes_.begin(), nodes_.end(),
    [](const NodeRecord & a, const NodeRecord & b) {return a.name < b.name;});

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    NodeRecord & node = nodes_[i];
    if (node.name.empty()) {
      throw TopologyError("node with empty name");
    }
    if (!node_index_.emplace(node.name, i).second) {
      throw TopologyError(fmt::format("duplicate node name '{}'", node.name));
    }
    normalize_endpoints(node.publishers, node.name, "publishers");
    normalize_endpoints(node.subscribers, node.name, "subscribers");
    normalize_endpoints(node.service_servers, node.name, "service_servers");
    normalize_endpoints(node.clients, node.name, "clients");

    for (const auto & ep : node.publishers) {
      auto & info = topics_[ep.interface_name];
      info.publishers.insert(node.name);
      info.types.insert(ep.interface_type);
    }
    for (const auto & ep : node.subscribers) {
      auto & info = topics_[ep.interface_name];
      info.subscribers.insert(node.name);
      info.types.insert(ep.interface_type);
    }
    for (const auto & ep : node.service_servers) {
      auto & info = services_[ep.interface_name];
      info.servers.insert(node.name);
      info.types.insert(ep.interface_type);
    }
    for (const auto & ep : node.clients) {
      auto & info = services_[ep.interface_name];
      info.clients.insert(node.name);
      info.types.insert(ep.interface_type);
    }
  }

  // A shared name would make "what kind of entity is X" ambiguous.
  for (const auto & [name, info] : topics_) {
    if (node_index_.contains(name)) {
      throw TopologyError(fmt::format("name '{}' is used by both a node and a topic", name));
    }
    if (services_.contains(name)) {
      throw TopologyError(fmt::format("name '{}' is used by both a topic and a service", name));
    }
  }
  for (const auto & [name, info] : services_) {
    if (node_index_.contains(name)) {
      throw TopologyError(fmt::format("name '{}' is used by both a node and a service", name));
    }
  }
}

const NodeRecord * Topology::find_node(std::string_view name) const
{
  auto it = node_index_.find(name);
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const TopicInfo * Topology::find_topic(std::string_view name) const
{
  auto it = topics_.find(name);
  return it == topics_.end() ? nullptr : &it->second;
}

const ServiceInfo * Topology::find_service(std::string_view name) const
{
  auto it = services_.find(name);
  return it == services_.end() ? nullptr : &it->second;
}

std::optional<EntityKind> Topology::kind_of(std::string_view name) const
{
  if (node_index_.contains(name)) {
    return EntityKind::Node;
  }
  if (topics_.contains(name)) {
    return EntityKind::Topic;
  }
  if (services_.contains(name)) {
    return EntityKind::Service;
  }
  return std::nullopt;
}

Topology parse_topology(std::string_view json_text)
{
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error & e) {
    throw TopologyError(fmt::format("malformed JSON: {}", e.what()));
  }
  if (!doc.is_object()) {
    throw TopologyError("topology document must be a JSON object");
  }
  std::string system_name = require_string(doc, "system_name", "topology");
  const json & nodes_json = require(doc, "nodes", "topology");
  if (!nodes_json.is_array()) {
    throw TopologyError("topology: 'nodes' must be an array");
  }

  std::vector<NodeRecord> nodes;
  nodes.reserve(nodes_json.size());
  for (const json & node_json : nodes_json) {
    if (!node_json.is_object()) {
      throw TopologyError("topology: node entries must be objects");
    }
    NodeRecord node;
    node.name = require_string(node_json, "name", "node");
    node.publishers = parse_endpoints(node_json, "publishers", "topic", node.name);
    node.subscribers = parse_endpoints(node_json, "subscribers", "topic", node.name);
    node.service_servers = parse_endpoints(node_json, "service_servers", "service", node.name);
    node.clients = parse_endpoints(node_json, "clients", "service", node.name);
    nodes.push_back(std::move(node));
  }
  return Topology(std::move(system_name), std::move(nodes));
}

Topology load_topology(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw TopologyError(fmt::format("cannot open topology file '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_topology(buffer.str());
}

std::string serialize_topology(const Topology & topo, int indent)
{
  ordered_json doc;
  doc["system_name"] = topo.system_name();
  doc["nodes"] = ordered_json::array();
  for (const auto & node : topo.nodes()) {
    ordered_json entry;
    entry["name"] = node.name;
    entry["publishers"] = endpoints_to_json(node.publishers, "topic");
    entry["subscribers"] = endpoints_to_json(node.subscribers, "topic");
    entry["service_servers"] = endpoints_to_json(node.service_servers, "service");
    entry["clients"] = endpoints_to_json(node.clients, "service");
    doc["nodes"].push_back(std::move(entry));
  }
  return doc.dump(indent);
}

std::vector<Entity> entities(const Topology & topo)
{
  std::vector<Entity> out;
  out.reserve(topo.entity_count());
  for (const auto & node : topo.nodes()) {
    out.push_back({node.name, EntityKind::Node});
  }
  for (const auto & [name, info] : topo.topics()) {
    out.push_back({name, EntityKind::Topic});
  }
  for (const auto & [name, info] : topo.services()) {
    out.push_back({name, EntityKind::Service});
  }
  return out;
}

}  // namespace archbench
