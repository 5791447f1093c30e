#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "rsm/error.hpp"

namespace rsm::cli {

namespace {

std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Emitter::Emitter(Format format, int digits, std::ostream& out) : format_(format), digits_(digits), out_(out) {}

void Emitter::header(const std::string& schema, const ConfigEcho& config, std::vector<std::string> columns) {
  columns_ = std::move(columns);
  if (format_ == Format::csv) {
    out_ << "# rsm-output format=" << format_version << " schema=" << schema << "\n";
    for (const auto& [key, value] : config) out_ << "# " << key << "=" << value << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << "\n";
    return;
  }
  nlohmann::ordered_json head;
  head["format"] = format_version;
  head["schema"] = schema;
  head["columns"] = columns_;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  head["config"] = cfg;
  out_ << head.dump() << "\n";
}

std::string Emitter::render(const Cell& cell) const {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return format_double(v, digits_);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>)
          return v;
        else
          return std::to_string(v);
      },
      cell);
}

void Emitter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size())
    throw Error(ErrorKind::InvalidArgument, "cli", "row width does not match the header");
  if (format_ == Format::csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_escape(render(cells[i]));
    out_ << "\n";
    return;
  }
  nlohmann::ordered_json obj;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (const auto* d = std::get_if<double>(&c)) {
      // Round to the requested digits; non-finite values become strings.
      if (std::isfinite(*d))
        obj[columns_[i]] = std::stod(format_double(*d, digits_));
      else
        obj[columns_[i]] = format_double(*d, digits_);
    } else {
      std::visit([&](const auto& v) { obj[columns_[i]] = v; }, c);
    }
  }
  out_ << obj.dump() << "\n";
}

}  // namespace rsm::cli
