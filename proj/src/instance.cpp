#include "mlas/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <utility>

#include "mlas/errors.hpp"

namespace mlas {

namespace {

struct Token {
  std::string text;
  int line = 0;
};

std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> out;
  std::string line;
  int nr = 0;
  while (std::getline(in, line)) {
    ++nr;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back({tok, nr});
  }
  return out;
}

double parse_coord(const Token& t) {
  double value = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(t.line, "expected a number, got '" + t.text + "'");
  return value;
}

long parse_count(const Token& t) {
  long value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 0)
    throw ParseError(t.line, "expected a point count, got '" + t.text + "'");
  return value;
}

void check_domain(const Point& p, int line) {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
    std::ostringstream os;
    os << "coordinate (" << p.x << ", " << p.y << ") outside the unit square";
    if (line > 0) os << " at line " << line;
    throw DomainError(os.str());
  }
}

void check_duplicates(const std::vector<Point>& pts) {
  std::map<std::pair<double, double>, int> seen;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto key = std::make_pair(pts[i].x, pts[i].y);
    auto [it, fresh] = seen.emplace(key, static_cast<int>(i));
    if (!fresh) {
      std::ostringstream os;
      os << "points " << it->second << " and " << i << " coincide at (" << pts[i].x << ", "
         << pts[i].y << ")";
      throw DomainError(os.str());
    }
  }
}

PointSet read_orlib_block(const std::vector<Token>& toks, std::size_t& pos,
                          const std::string& source_id, bool reject_trailing) {
  if (pos >= toks.size()) throw FormatError(source_id + ": empty input");
  const long declared = parse_count(toks[pos]);
  ++pos;
  PointSet ps;
  ps.source_id = source_id;
  ps.points.reserve(static_cast<std::size_t>(declared));
  for (long i = 0; i < declared; ++i) {
    if (pos + 1 >= toks.size()) {
      std::ostringstream os;
      os << source_id << ": declared " << declared << " points, found " << i;
      throw FormatError(os.str());
    }
    Point p{parse_coord(toks[pos]), parse_coord(toks[pos + 1])};
    check_domain(p, toks[pos].line);
    ps.points.push_back(p);
    pos += 2;
  }
  if (reject_trailing && pos != toks.size())
    throw FormatError(source_id + ": trailing data after the declared points (multi-case file? use a case number)");
  check_duplicates(ps.points);
  return ps;
}

PointSet read_csv(std::istream& in, const std::string& source_id) {
  std::string line;
  int nr = 0;
  bool header_seen = false;
  PointSet ps;
  ps.source_id = source_id;
  auto strip = [](std::string s) {
    std::erase_if(s, [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
    return s;
  };
  while (std::getline(in, line)) {
    ++nr;
    std::string s = strip(line);
    if (s.empty()) continue;
    if (!header_seen) {
      if (s != "x,y") throw FormatError(source_id + ": missing 'x,y' header");
      header_seen = true;
      continue;
    }
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError(nr, "expected 'x,y' values");
    Point p{parse_coord({s.substr(0, comma), nr}), parse_coord({s.substr(comma + 1), nr})};
    check_domain(p, nr);
    ps.points.push_back(p);
  }
  if (!header_seen) throw FormatError(source_id + ": empty input");
  check_duplicates(ps.points);
  return ps;
}

}  // namespace

PointSet load_points(std::istream& in, PointFormat format, std::string source_id) {
  if (format == PointFormat::csv) return read_csv(in, source_id);
  auto toks = tokenize(in);
  std::size_t pos = 0;
  return read_orlib_block(toks, pos, source_id, /*reject_trailing=*/true);
}

PointSet load_points_case(std::istream& in, int case_nr, std::string source_id) {
  auto toks = tokenize(in);
  if (toks.empty()) throw FormatError(source_id + ": empty input");
  std::size_t pos = 0;
  const long cases = parse_count(toks[pos]);
  ++pos;
  if (case_nr < 1 || case_nr > cases) {
    std::ostringstream os;
    os << source_id << ": case " << case_nr << " out of range, file holds " << cases;
    throw FormatError(os.str());
  }
  PointSet ps;
  for (int i = 1; i <= case_nr; ++i)
    ps = read_orlib_block(toks, pos, source_id + "#" + std::to_string(i), false);
  return ps;
}

PointSet load_points_file(const std::string& path, PointFormat format, int case_nr) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string id = path;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  if (case_nr > 0) {
    if (format != PointFormat::orlib)
      throw DomainError("case selection only applies to orlib files");
    return load_points_case(in, case_nr, id);
  }
  return load_points(in, format, id);
}

int sink_of(const PointSet& ps) {
  if (ps.points.empty()) throw DomainError("sink_of: empty point set");
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    const double dx = ps.points[i].x - 0.5;
    const double dy = ps.points[i].y - 0.5;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(i);
    }
  }
  return best;
}

Instance::Instance(PointSet ps, double d) : ps_(std::move(ps)), d_(d) {
  if (!(d > 0.0)) throw DomainError("critical distance must be positive");
  n_ = static_cast<int>(ps_.points.size());
  if (n_ == 0) throw DomainError("empty point set");
  for (const auto& p : ps_.points) check_domain(p, 0);
  check_duplicates(ps_.points);

  adj_.assign(n_, {});
  const std::size_t words = (static_cast<std::size_t>(n_) + 63) / 64;
  bits_.assign(n_, std::vector<std::uint64_t>(words, 0));
  const double d2 = d * d;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      const double dx = ps_.points[u].x - ps_.points[v].x;
      const double dy = ps_.points[u].y - ps_.points[v].y;
      if (dx * dx + dy * dy <= d2) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        bits_[u][static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
        bits_[v][static_cast<std::size_t>(u) >> 6] |= std::uint64_t{1} << (u & 63);
      }
    }
  }

  sink_ = sink_of(ps_);

  // Hop levels by breadth-first search; doubles as the connectivity check.
  level_.assign(n_, -1);
  level_[sink_] = 0;
  std::deque<int> queue{sink_};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj_[u]) {
      if (level_[v] < 0) {
        level_[v] = level_[u] + 1;
        queue.push_back(v);
      }
    }
  }
  for (int v = 0; v < n_; ++v) {
    if (level_[v] < 0) {
      std::ostringstream os;
      os << "graph disconnected at d=" << d_ << ": vertex " << v << " unreachable from sink "
         << sink_;
      throw ConnectivityError(os.str());
    }
  }

  for (int v = 0; v < n_; ++v) {
    if (v == sink_) continue;
    for (int u : adj_[v]) arcs_.emplace_back(v, u);
  }
}

std::shared_ptr<const Instance> make_instance(PointSet ps, double d) {
  return std::make_shared<const Instance>(std::move(ps), d);
}

}  // namespace mlas
