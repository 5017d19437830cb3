#pragma once

#include <stdexcept>
#include <string>

namespace pinch {

// Every library error derives from Error so callers can catch one type and
// still report a stable machine-readable kind().
class Error : public std::runtime_error
{
public:
  Error(std::string kind, const std::string& what)
    : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct InvalidArgument : Error
{
  explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

struct DegenerateGeometry : Error
{
  explicit DegenerateGeometry(const std::string& what) : Error("degenerate-geometry", what) {}
};

struct InfeasibleCovertness : Error
{
  explicit InfeasibleCovertness(const std::string& what) : Error("infeasible-covertness", what) {}
};

struct DegenerateChannel : Error
{
  explicit DegenerateChannel(const std::string& what) : Error("degenerate-channel", what) {}
};

struct NullSpaceEmpty : Error
{
  explicit NullSpaceEmpty(const std::string& what) : Error("null-space-empty", what) {}
};

struct ConfigError : Error
{
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

struct IoError : Error
{
  explicit IoError(const std::string& what) : Error("io", what) {}
};

} // namespace pinch
