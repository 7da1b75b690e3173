#pragma once

#include <cstdint>
#include <vector>

namespace nonlocal {

using NodeIndex = std::int64_t;

/// Uniform grid over the completed domain [a - delta, b + delta] whose
/// spacing divides both the interval and the horizon (delta = m h).
///
/// Node i sits at a + (i - m) h for i = 0 .. n_int + 2m. The free nodes are
/// those strictly inside (a, b); they carry the Galerkin unknowns and are
/// numbered 0 .. n_int - 2 in every vector and matrix of the library.
/// Collar nodes are never stored, so the horizon may be astronomically large.
class Mesh1D {
 public:
  static Mesh1D build(double a, double b, int n_int, NodeIndex m);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double h() const noexcept { return h_; }
  int n_int() const noexcept { return n_int_; }
  NodeIndex m() const noexcept { return m_; }
  double delta() const noexcept { return static_cast<double>(m_) * h_; }

  NodeIndex node_count() const noexcept { return n_int_ + 2 * m_ + 1; }
  double node(NodeIndex i) const noexcept {
    return a_ + static_cast<double>(i - m_) * h_;
  }

  std::size_t free_count() const noexcept { return static_cast<std::size_t>(n_int_ - 1); }
  bool is_free(NodeIndex i) const noexcept { return i > m_ && i < m_ + n_int_; }
  /// Node index of the f-th free unknown.
  NodeIndex free_node(std::size_t f) const noexcept {
    return m_ + 1 + static_cast<NodeIndex>(f);
  }
  /// Coordinate of the f-th free unknown.
  double free_x(std::size_t f) const noexcept { return a_ + static_cast<double>(f + 1) * h_; }

  std::vector<NodeIndex> free_ids() const;
  NodeIndex constrained_count() const noexcept {
    return node_count() - static_cast<NodeIndex>(free_count());
  }
  /// Materializes every constrained index; only sensible for moderate m.
  std::vector<NodeIndex> constrained_ids() const;

 private:
  Mesh1D(double a, double b, int n_int, NodeIndex m)
      : a_(a), b_(b), h_((b - a) / n_int), n_int_(n_int), m_(m) {}

  double a_;
  double b_;
  double h_;
  int n_int_;
  NodeIndex m_;
};

}  // namespace nonlocal
