#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cli.hpp"
#include "rsm/error.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_tolerance = 1;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

// key=value lines without a section belong to the selected subcommand.
class SubcommandConfig : public CLI::ConfigINI {
 public:
  explicit SubcommandConfig(const CLI::App* app) : app_(app) {}
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    const auto subs = app_->get_subcommands();
    if (subs.empty()) return items;
    for (auto& item : items)
      if (item.parents.empty() && item.name != "++" && item.name != "--") item.parents = {subs.front()->get_name()};
    return items;
  }

 private:
  const CLI::App* app_;
};

rsm::cli::ConfigEcho echo(const CLI::App& app) {
  rsm::cli::ConfigEcho out;
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (key == "help" || key == "config") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    out.emplace_back(key, value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for moments of Rankin-Selberg L-functions"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.config_formatter(std::make_shared<SubcommandConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  rsm::cli::Globals globals;
  std::string format = "csv";
  app.add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--digits", globals.digits, "significant digits of real columns")->check(CLI::Range(1, 17));
  app.add_option("--threads", globals.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", globals.seed, "seed for randomized grids");
  app.add_option("--output", globals.output, "output file ('-' for stdout)");

  auto commands = rsm::cli::make_commands();
  for (auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd->name(), cmd->summary());
    sub->fallthrough();
    cmd->add_options(*sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_config;
  }
  globals.format = format == "jsonl" ? rsm::cli::Format::json_lines : rsm::cli::Format::csv;

  CLI::App* selected = app.get_subcommands().front();
  rsm::cli::Command* cmd = nullptr;
  for (auto& c : commands)
    if (c->name() == selected->get_name()) cmd = c.get();

  std::ofstream file;
  if (globals.output != "-") {
    file.open(globals.output);
    if (!file) {
      std::cerr << "rsm: cannot open output file " << globals.output << "\n";
      return exit_config;
    }
  }
  std::ostream& stream = globals.output == "-" ? std::cout : file;

  try {
    rsm::cli::Emitter out(globals.format, globals.digits, stream);
    rsm::cli::ConfigEcho config = echo(app);
    for (auto& kv : echo(*selected)) config.emplace_back(selected->get_name() + "." + kv.first, kv.second);
    out.header(cmd->schema(), config, cmd->columns());
    const bool pass = cmd->run(globals, out);
    stream.flush();
    return pass ? exit_pass : exit_tolerance;
  } catch (const rsm::Error& e) {
    std::cerr << "rsm: " << e.what() << "\n";
    return rsm::is_numeric_failure(e.kind()) ? exit_numeric : exit_config;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rsm: bad value: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "rsm: " << e.what() << "\n";
    return exit_numeric;
  }
}
