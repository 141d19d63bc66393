#pragma once

#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace bsa::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kUsage = 2;

/// Each register_* call adds a subcommand and stores the action to run when
/// that subcommand is selected.
using Action = std::function<int()>;

void register_dataset(CLI::App& app, Action& action);
void register_model(CLI::App& app, Action& action);
void register_analysis(CLI::App& app, Action& action);
void register_plan(CLI::App& app, Action& action);

/// Effective configuration line on stderr.
inline void echo_config(const std::string& command, const nlohmann::json& cfg) {
  std::cerr << "# " << command << " config: " << cfg.dump() << '\n';
}

}  // namespace bsa::cli
