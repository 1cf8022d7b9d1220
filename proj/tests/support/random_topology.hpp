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


#ifndef ARCHBENCH_TEST_SUPPORT__RANDOM_TOPOLOGY_HPP_
#define ARCHBENCH_TEST_SUPPORT__RANDOM_TOPOLOGY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "archbench/topology.hpp"

namespace archbench::test
{

struct RandomTopologyOptions
{
  std::size_t max_nodes = 8;
  std::size_t max_topics = 6;
  std::size_t max_services = 6;
  double link_probability = 0.3;
};

/// Random graph with 1..max_nodes nodes and independently drawn endpoints.
std::vector<NodeRecord> random_node_records(
  std::uint64_t seed, const RandomTopologyOptions & options = {});

Topology random_topology(std::uint64_t seed, const RandomTopologyOptions & options = {});

/// Exactly n nodes, s services and t topics, each interface used at least once.
Topology shaped_topology(
  std::size_t n, std::size_t s, std::size_t t, std::uint64_t seed = 1,
  const std::string & system_name = "shaped");

/// Path check by scanning every endpoint pair of the raw records.
bool brute_force_path(
  const std::vector<NodeRecord> & nodes, const std::string & from, const std::string & to,
  bool service_response_paths = false);

}  // namespace archbench::test

#endif  // ARCHBENCH_TEST_SUPPORT__RANDOM_TOPOLOGY_HPP_
