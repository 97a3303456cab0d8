#include "geotsp/instance.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "geotsp/rng.hpp"

namespace geotsp {

namespace {

constexpr double kBox = 1000.0;
constexpr double kClusterSigma = 25.0;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_int(std::string_view s, long long& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto stop = s.find_first_of(" \t\r", start);
    if (stop == std::string_view::npos) stop = s.size();
    out.push_back(s.substr(start, stop - start));
    pos = stop;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

bool all_collinear(const std::vector<Point>& pts) {
  try {
    convex_hull(pts);
    return false;
  } catch (const AllCollinear&) {
    return true;
  }
}

bool has_duplicates(const std::vector<Point>& pts) {
  std::set<std::pair<double, double>> seen;
  for (const auto& p : pts) {
    if (!seen.emplace(p.x, p.y).second) return true;
  }
  return false;
}

bool degenerate(const std::vector<Point>& pts) { return has_duplicates(pts) || all_collinear(pts); }

}  // namespace

Instance::Instance(std::string name, std::vector<Point> points, DistanceMode mode)
    : name_(std::move(name)), points_(std::move(points)), mode_(mode) {
  if (points_.size() < 3) throw InvalidInstance("an instance needs at least 3 points");
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidInstance("non-finite coordinate");
  }
  if (has_duplicates(points_)) throw InvalidInstance("duplicate points");
  if (all_collinear(points_)) throw InvalidInstance("all points are collinear");
}

double Instance::distance(int i, int j) const {
  const double d = std::hypot(points_[i].x - points_[j].x, points_[i].y - points_[j].y);
  return mode_ == DistanceMode::TsplibRound ? std::floor(d + 0.5) : d;
}

DistanceTable::DistanceTable(const Instance& inst)
    : n_(inst.size()), d_(static_cast<std::size_t>(n_) * n_, 0.0) {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      d_[static_cast<std::size_t>(i) * n_ + j] = d_[static_cast<std::size_t>(j) * n_ + i] = inst.distance(i, j);
    }
  }
}

Instance parse_tsplib(std::string_view text) {
  std::string name;
  long long dimension = -1;
  bool saw_weight_type = false;
  bool in_coords = false;
  std::vector<Point> points;
  std::vector<bool> seen;
  long long coords_read = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    if (line == "EOF") break;

    if (in_coords) {
      const auto fields = split_ws(line);
      long long id = 0;
      double x = 0.0;
      double y = 0.0;
      if (fields.size() != 3 || !parse_int(fields[0], id) || !parse_double(fields[1], x) ||
          !parse_double(fields[2], y)) {
        throw ParseError("malformed coordinate line '" + std::string(line) + "'", line_no);
      }
      if (++coords_read > dimension) {
        throw DimensionMismatch("more coordinate lines than DIMENSION " + std::to_string(dimension), line_no);
      }
      if (id < 1 || id > dimension) throw ParseError("node index out of range", line_no);
      if (seen[id - 1]) throw ParseError("duplicate node index " + std::to_string(id), line_no);
      seen[id - 1] = true;
      points[id - 1] = Point{x, y};
      continue;
    }

    if (line == "NODE_COORD_SECTION") {
      if (dimension < 0) throw ParseError("NODE_COORD_SECTION before DIMENSION", line_no);
      if (!saw_weight_type) throw ParseError("NODE_COORD_SECTION before EDGE_WEIGHT_TYPE", line_no);
      in_coords = true;
      points.assign(dimension, Point{});
      seen.assign(dimension, false);
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'KEY: value'", line_no);
    const auto key = trim(line.substr(0, colon));
    const auto value = trim(line.substr(colon + 1));
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "TYPE") {
      if (value != "TSP") throw Unsupported("TYPE " + std::string(value) + " is not supported", line_no);
    } else if (key == "DIMENSION") {
      if (!parse_int(value, dimension) || dimension < 0) throw ParseError("bad DIMENSION", line_no);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value != "EUC_2D") {
        throw Unsupported("EDGE_WEIGHT_TYPE " + std::string(value) + " is not supported", line_no);
      }
      saw_weight_type = true;
    } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE") {
      // informational only
    } else {
      throw ParseError("unknown keyword '" + std::string(key) + "'", line_no);
    }
  }

  if (!in_coords) throw ParseError("missing NODE_COORD_SECTION", line_no);
  if (coords_read != dimension) {
    throw DimensionMismatch("DIMENSION " + std::to_string(dimension) + " but " + std::to_string(coords_read) +
                                " coordinate lines",
                            line_no);
  }
  return Instance(std::move(name), std::move(points));
}

Instance read_tsplib_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tsplib(buf.str());
}

std::string write_tsplib(const Instance& inst) {
  std::ostringstream out;
  out << "NAME: " << (inst.name().empty() ? "unnamed" : inst.name()) << '\n'
      << "TYPE: TSP\n"
      << "DIMENSION: " << inst.size() << '\n'
      << "EDGE_WEIGHT_TYPE: EUC_2D\n"
      << "NODE_COORD_SECTION\n";
  for (int i = 0; i < inst.size(); ++i) {
    out << (i + 1) << ' ' << format_double(inst.point(i).x) << ' ' << format_double(inst.point(i).y) << '\n';
  }
  out << "EOF\n";
  return out.str();
}

Instance gen_uniform(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_uniform: n must be at least 3");
  Random rng(seed);
  std::vector<Point> pts;
  do {
    pts.clear();
    for (int k = 0; k < n; ++k) {
      const double x = rng.uniform(0.0, kBox);
      const double y = rng.uniform(0.0, kBox);
      pts.push_back({x, y});
    }
  } while (degenerate(pts));
  return Instance("uniform_" + std::to_string(n) + "_" + std::to_string(seed), std::move(pts));
}

Instance gen_clustered(int n, int clusters, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_clustered: n must be at least 3");
  if (clusters < 1 || clusters > n) throw std::invalid_argument("gen_clustered: clusters must be in [1, n]");
  Random rng(seed);
  std::vector<Point> pts;
  do {
    std::vector<Point> centers;
    for (int c = 0; c < clusters; ++c) {
      const double x = rng.uniform(0.0, kBox);
      const double y = rng.uniform(0.0, kBox);
      centers.push_back({x, y});
    }
    pts.clear();
    for (int k = 0; k < n; ++k) {
      const Point& c = centers[k % clusters];
      const double dx = kClusterSigma * rng.normal();
      const double dy = kClusterSigma * rng.normal();
      pts.push_back({c.x + dx, c.y + dy});
    }
  } while (degenerate(pts));
  return Instance("clustered_" + std::to_string(n) + "_" + std::to_string(seed), std::move(pts));
}

Instance gen_circle(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_circle: n must be at least 3");
  Random rng(seed);
  const double step = 2.0 * std::numbers::pi / n;
  const double phase = rng.uniform(0.0, step);
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    const double a = phase + step * (k + rng.uniform(-0.3, 0.3));
    pts.push_back({500.0 + 400.0 * std::cos(a), 500.0 + 400.0 * std::sin(a)});
  }
  return Instance("circle_" + std::to_string(n) + "_" + std::to_string(seed), std::move(pts));
}

}  // namespace geotsp
