#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slicecwe {

struct Point2;

/// Base for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, out-of-range parameter, invalid contour.
/// `path()` names the offending JSON location when the error came from a file.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string path = {})
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// The geometry kernel could not resolve a configuration. Carries the
/// coordinates that triggered it so the case can be reproduced.
class GeometryError : public Error {
 public:
  GeometryError(const std::string& what, std::vector<std::pair<double, double>> coords = {})
      : Error(what), coords_(std::move(coords)) {}
  const std::vector<std::pair<double, double>>& coordinates() const noexcept { return coords_; }

 private:
  std::vector<std::pair<double, double>> coords_;
};

/// Caller broke an operation's precondition (e.g. a z-varying move passed
/// where a constant-z one is required).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSceneError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicecwe
