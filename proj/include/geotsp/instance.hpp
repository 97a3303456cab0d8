#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geotsp/geometry.hpp"

namespace geotsp {

enum class DistanceMode {
  ExactEuclid,  // real-valued Euclidean distance
  TsplibRound,  // nint(Euclidean distance), the TSPLIB EUC_2D convention
};

/// Thrown for malformed TSPLIB input.  `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class Unsupported : public ParseError {
 public:
  using ParseError::ParseError;
};

class DimensionMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Thrown when a point set violates the instance invariants.
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A named planar point set.  Vertex i corresponds to points[i].  Immutable
/// after construction; the constructor enforces n >= 3, pairwise distinct
/// points and not-all-collinear.
class Instance {
 public:
  Instance(std::string name, std::vector<Point> points, DistanceMode mode = DistanceMode::ExactEuclid);

  const std::string& name() const { return name_; }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(int i) const { return points_[i]; }
  int size() const { return static_cast<int>(points_.size()); }
  DistanceMode distance_mode() const { return mode_; }

  Instance with_mode(DistanceMode mode) const { return Instance(name_, points_, mode); }

  double distance(int i, int j) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::string name_;
  std::vector<Point> points_;
  DistanceMode mode_;
};

/// Precomputed n x n distances of an instance, in its distance mode.
class DistanceTable {
 public:
  explicit DistanceTable(const Instance& inst);
  double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  int size() const { return n_; }

 private:
  int n_;
  std::vector<double> d_;
};

Instance parse_tsplib(std::string_view text);
Instance read_tsplib_file(const std::string& path);
std::string write_tsplib(const Instance& inst);

/// n points uniform in [0,1000]^2.
Instance gen_uniform(int n, std::uint64_t seed);

/// `clusters` centers uniform in [0,1000]^2; point k joins cluster k % clusters
/// with isotropic Gaussian offset (sigma 25).
Instance gen_clustered(int n, int clusters, std::uint64_t seed);

/// n points on the circle of radius 400 centred at (500,500): evenly spaced
/// angles with a random phase and up to 30% per-point angular jitter.  Every
/// point is a hull vertex.
Instance gen_circle(int n, std::uint64_t seed);

}  // namespace geotsp
