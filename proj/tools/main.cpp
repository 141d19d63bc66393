#include <iostream>

#include "bsa/core/error.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Basic surgical action toolkit"};
  app.require_subcommand(1);
  bsa::cli::Action action;
  bsa::cli::register_dataset(app, action);
  bsa::cli::register_model(app, action);
  bsa::cli::register_analysis(app, action);
  bsa::cli::register_plan(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? bsa::cli::kOk : bsa::cli::kUsage;
  }
  if (!action) {
    std::cerr << app.help();
    return bsa::cli::kUsage;
  }
  try {
    return action();
  } catch (const bsa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == bsa::Errc::InvalidArgument ? bsa::cli::kUsage : bsa::cli::kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bsa::cli::kValidationFailure;
  }
}
