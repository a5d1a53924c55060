#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mlas {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct PointSet {
  std::vector<Point> points;
  std::string source_id;
};

enum class PointFormat { orlib, csv };

// orlib: first token is the point count, then that many coordinate pairs.
// csv: header "x,y", one point per row.
PointSet load_points(std::istream& in, PointFormat format, std::string source_id = "stream");

// Beasley-style container file: leading problem count, then one point set per
// case. case_nr is 1-based.
PointSet load_points_case(std::istream& in, int case_nr, std::string source_id = "stream");

PointSet load_points_file(const std::string& path, PointFormat format, int case_nr = 0);

// Vertex nearest to the square center (0.5, 0.5); ties go to the lowest id.
int sink_of(const PointSet& ps);

// Immutable unit disk communication graph over a point set. An edge (u, v)
// exists iff the Euclidean distance does not exceed the critical distance d;
// the comparison is done on squared distances so edge sets are bit-stable.
class Instance {
 public:
  Instance(PointSet ps, double d);

  int size() const { return n_; }
  double critical_distance() const { return d_; }
  int sink() const { return sink_; }
  int level(int v) const { return level_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool has_edge(int u, int v) const {
    return u != v && ((bits_[u][static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u) != 0;
  }
  const PointSet& point_set() const { return ps_; }
  const Point& point(int v) const { return ps_.points[v]; }

  // All ordered pairs (v, u) where v may send to u; no arc starts at the sink.
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

 private:
  PointSet ps_;
  double d_ = 0.0;
  int n_ = 0;
  int sink_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<std::uint64_t>> bits_;
  std::vector<int> level_;
  std::vector<std::pair<int, int>> arcs_;
};

std::shared_ptr<const Instance> make_instance(PointSet ps, double d);

}  // namespace mlas
