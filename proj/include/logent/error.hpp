#pragma once

#include <stdexcept>
#include <string>

namespace logent {

// Every error raised by the library carries a stable short name so the CLI can
// report it on stderr without string matching on messages.
class error : public std::runtime_error {
public:
  error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

struct invalid_argument : error {
  explicit invalid_argument(const std::string& what) : error("invalid_argument", what) {}
};

// Prime table or point set does not cover the window a query needs.
struct coverage_error : error {
  explicit coverage_error(const std::string& what) : error("coverage_error", what) {}
};

struct empty_input : error {
  explicit empty_input(const std::string& what = "No distances available")
      : error("empty_input", what) {}
};

struct degenerate_range : error {
  explicit degenerate_range(const std::string& what) : error("degenerate_range", what) {}
};

struct degenerate_centers : error {
  explicit degenerate_centers(const std::string& what = "Degenerate log-bin centers")
      : error("degenerate_centers", what) {}
};

struct degenerate_spectrum : error {
  explicit degenerate_spectrum(const std::string& what) : error("degenerate_spectrum", what) {}
};

struct configuration_error : error {
  explicit configuration_error(const std::string& what) : error("configuration_error", what) {}
};

struct io_error : error {
  explicit io_error(const std::string& what) : error("io_error", what) {}
};

}  // namespace logent
