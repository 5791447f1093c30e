#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace CLI {
class App;
}

namespace rsm::cli {

inline constexpr int format_version = 1;

enum class Format { csv, json_lines };

using Cell = std::variant<std::int64_t, double, std::string, bool>;
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// Writes one versioned header (schema, resolved config, columns) and then rows.
class Emitter {
 public:
  Emitter(Format format, int digits, std::ostream& out);

  void header(const std::string& schema, const ConfigEcho& config, std::vector<std::string> columns);
  void row(const std::vector<Cell>& cells);

 private:
  std::string render(const Cell& cell) const;

  Format format_;
  int digits_;
  std::ostream& out_;
  std::vector<std::string> columns_;
};

struct Globals {
  Format format = Format::csv;
  int digits = 17;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string output = "-";
};

class Command {
 public:
  virtual ~Command() = default;
  virtual std::string name() const = 0;
  virtual std::string summary() const = 0;
  // Schema tag of the emitted rows; bumped whenever columns change.
  virtual std::string schema() const = 0;
  virtual void add_options(CLI::App& app) = 0;
  virtual std::vector<std::string> columns() const = 0;
  // Emits rows; returns false when some row fails its tolerance.
  virtual bool run(const Globals& globals, Emitter& out) = 0;
};

std::vector<std::unique_ptr<Command>> make_commands();

}  // namespace rsm::cli
