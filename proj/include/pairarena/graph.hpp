// Copyright 2026 The PairArena Authors.
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

#pragma once

#include <Eigen/Core>
#include <vector>

namespace pairarena {

// Connected components of the undirected graph with an edge wherever
// adjacency(i, j) > 0. Returns one vector of vertex indices per component.
template <typename Derived>
std::vector<std::vector<int>> connected_components(
    const Eigen::MatrixBase<Derived>& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> components;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    const int comp = static_cast<int>(components.size());
    components.emplace_back();
    stack.push_back(start);
    label[start] = comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      components[comp].push_back(v);
      for (int u = 0; u < n; ++u) {
        if (label[u] < 0 && adjacency(v, u) > 0) {
          label[u] = comp;
          stack.push_back(u);
        }
      }
    }
  }
  return components;
}

template <typename Derived>
bool is_connected(const Eigen::MatrixBase<Derived>& adjacency) {
  return connected_components(adjacency).size() <= 1;
}

// Strongly connected components (Kosaraju) of the digraph with an edge
// i -> j wherever adjacency(i, j) > 0.
template <typename Derived>
std::vector<std::vector<int>> strongly_connected_components(
    const Eigen::MatrixBase<Derived>& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  // Iterative DFS recording finish order.
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::pair<int, int>> stack{{start, 0}};
    seen[start] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      bool descended = false;
      for (int u = next; u < n; ++u) {
        if (!seen[u] && adjacency(v, u) > 0) {
          stack.back().second = u + 1;
          stack.emplace_back(u, 0);
          seen[u] = 1;
          descended = true;
          break;
        }
      }
      if (!descended) {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  // Second pass on the transpose in reverse finish order.
  std::vector<std::vector<int>> components;
  std::vector<char> assigned(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (assigned[*it]) continue;
    components.emplace_back();
    std::vector<int> stack{*it};
    assigned[*it] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      components.back().push_back(v);
      for (int u = 0; u < n; ++u) {
        if (!assigned[u] && adjacency(u, v) > 0) {
          assigned[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return components;
}

}  // namespace pairarena
