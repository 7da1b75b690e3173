#include "nonlocal/mesh.hpp"

#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {

Mesh1D Mesh1D::build(double a, double b, int n_int, NodeIndex m) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
    throw ConfigError("mesh requires finite endpoints with a < b");
  }
  if (n_int < 2) {
    throw ConfigError("mesh requires n_int >= 2, got " + std::to_string(n_int));
  }
  if (m < 1) {
    throw ConfigError("mesh requires horizon multiple m >= 1, got " + std::to_string(m));
  }
  return Mesh1D(a, b, n_int, m);
}

std::vector<NodeIndex> Mesh1D::free_ids() const {
  std::vector<NodeIndex> ids(free_count());
  for (std::size_t f = 0; f < ids.size(); ++f) ids[f] = free_node(f);
  return ids;
}

std::vector<NodeIndex> Mesh1D::constrained_ids() const {
  std::vector<NodeIndex> ids;
  ids.reserve(static_cast<std::size_t>(constrained_count()));
  for (NodeIndex i = 0; i <= m_; ++i) ids.push_back(i);
  for (NodeIndex i = m_ + n_int_; i < node_count(); ++i) ids.push_back(i);
  return ids;
}

}  // namespace nonlocal
