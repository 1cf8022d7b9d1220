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

#include "random_topology.hpp"

#include <fmt/format.h>

#include <random>

namespace archbench::test
{

namespace
{

std::string topic_name(std::size_t i) {return fmt::format("/topic_{}", i);}
std::string service_name(std::size_t i) {return fmt::format("/service_{}", i);}
std::string node_name(std::size_t i) {return fmt::format("node_{}", i);}
std::string topic_type(std::size_t i) {return fmt::format("std_msgs/msg/Type{}", i % 3);}
std::string service_type(std::size_t i) {return fmt::format("example_interfaces/srv/Op{}", i % 4);}

}  // namespace

std::vector<NodeRecord> random_node_records(
  std::uint64_t seed, const RandomTopologyOptions & options)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> node_count(1, options.max_nodes);
  std::uniform_int_distribution<std::size_t> topic_count(0, options.max_topics);
  std::uniform_int_distribution<std::size_t> service_count(0, options.max_services);
  std::bernoulli_distribution link(options.link_probability);
  const std::size_t n = node_count(rng);
  const std::size_t t = topic_count(rng);
  const std::size_t s = service_count(rng);
  std::vector<NodeRecord> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i].name = node_name(i);
    for (std::size_t j = 0; j < t; ++j) {
      if (link(rng)) {
        nodes[i].publishers.push_back({topic_name(j), topic_type(j)});
      }
      if (link(rng)) {
        nodes[i].subscribers.push_back({topic_name(j), topic_type(j)});
      }
    }
    for (std::size_t k = 0; k < s; ++k) {
      if (link(rng)) {
        nodes[i].service_servers.push_back({service_name(k), service_type(k)});
      }
      if (link(rng)) {
        nodes[i].clients.push_back({service_name(k), service_type(k)});
      }
    }
  }
  return nodes;
}

Topology random_topology(std::uint64_t seed, const RandomTopologyOptions & options)
{
  return Topology(fmt::format("random_{}", seed), random_node_records(seed, options));
}

Topology shaped_topology(
  std::size_t n, std::size_t s, std::size_t t, std::uint64_t seed,
  const std::string & system_name)
{
  std::mt19937_64 rng(seed);
  std::vector<NodeRecord> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i].name = node_name(i);
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t j = 0; j < t; ++j) {
    nodes[pick(rng)].publishers.push_back({topic_name(j), topic_type(j)});
    const std::size_t sub = pick(rng);
    if (sub % 2 == 0) {
      nodes[sub].subscribers.push_back({topic_name(j), topic_type(j)});
    }
  }
  for (std::size_t k = 0; k < s; ++k) {
    nodes[pick(rng)].service_servers.push_back({service_name(k), service_type(k)});
    const std::size_t client = pick(rng);
    if (client % 3 == 0) {
      nodes[client].clients.push_back({service_name(k), service_type(k)});
    }
  }
  return Topology(system_name, std::move(nodes));
}

bool brute_force_path(
  const std::vector<NodeRecord> & nodes, const std::string & from, const std::string & to,
  bool service_response_paths)
{
  const NodeRecord * a = nullptr;
  const NodeRecord * b = nullptr;
  for (const auto & node : nodes) {
    if (node.name == from) {
      a = &node;
    }
    if (node.name == to) {
      b = &node;
    }
  }
  if (a == nullptr || b == nullptr) {
    return false;
  }
  for (const auto & pub : a->publishers) {
    for (const auto & sub : b->subscribers) {
      if (pub.interface_name == sub.interface_name) {
        return true;
      }
    }
  }
  for (const auto & client : a->clients) {
    for (const auto & server : b->service_servers) {
      if (client.interface_name == server.interface_name) {
        return true;
      }
    }
  }
  if (service_response_paths) {
    for (const auto & server : a->service_servers) {
      for (const auto & client : b->clients) {
        if (client.interface_name == server.interface_name) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace archbench::test
