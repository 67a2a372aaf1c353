#include <cstddef>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "telesim/harness.hpp"

namespace {

using telesim::harness::Command;
using telesim::harness::RunConfig;

/// Accepts "re" or "re,im" decimal literals.
telesim::fock::Complex parse_complex(const std::string& text) {
  const auto parse_part = [&](const std::string& part) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != part.size() || part.empty()) {
      throw std::invalid_argument("invalid complex literal: \"" + text +
                                  "\" (expected re or re,im)");
    }
    return value;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    return {parse_part(text), 0.0};
  }
  return {parse_part(text.substr(0, comma)), parse_part(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string alpha_text = "1";
  std::string beta_text = "0";
  std::string variant_text = "four-crystal";
  std::string format_text = "text";
  std::string message_text;
  std::string symbols_text;

  CLI::App app{
      "telesim: photon-pair teleportation in the creation-operator picture, "
      "with its lottery-machine analog"};
  app.require_subcommand(1);

  auto* symbolic = app.add_subcommand(
      "symbolic", "Trace the symbolic pipeline stage by stage");
  auto* run =
      app.add_subcommand("run", "Sample Monte Carlo teleportation trials");
  auto* classical_cmd =
      app.add_subcommand("classical", "Run the ball-conveyor analog");
  auto* compare = app.add_subcommand(
      "compare", "Quantum and classical statistics side by side");

  for (auto* cmd : {symbolic, run, compare}) {
    cmd->add_option("--alpha", alpha_text,
                    "Message H amplitude (re or re,im)");
    cmd->add_option("--beta", beta_text, "Message V amplitude (re or re,im)");
  }
  for (auto* cmd : {run, compare}) {
    cmd->add_option("--trials", cfg.trials, "Number of trials")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--variant", variant_text, "Crystal arrangement")
        ->check(CLI::IsMember({"four-crystal", "two-crystal"}));
    cmd->add_option("--timeout", cfg.variant.timeout_dt,
                    "No-call timeout in time units");
    cmd->add_option("--latency", cfg.variant.call_latency,
                    "Call latency in time units");
  }
  for (auto* cmd : {symbolic, run, classical_cmd, compare}) {
    cmd->add_option("--seed", cfg.seed, "Master seed");
    cmd->add_option("--out", cfg.out_path, "Write records to a file");
    cmd->add_option("--format", format_text, "Record format")
        ->check(CLI::IsMember({"text", "jsonl"}));
  }
  auto* message_opt = classical_cmd->add_option(
      "--message", message_text, "Ball string over {R,B}, e.g. RRB");
  auto* symbols_opt = classical_cmd->add_option(
      "--symbols", symbols_text, "Digit string over 0-7, e.g. 10");
  message_opt->excludes(symbols_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (symbolic->parsed()) cfg.command = Command::Symbolic;
    if (run->parsed()) cfg.command = Command::Run;
    if (classical_cmd->parsed()) cfg.command = Command::Classical;
    if (compare->parsed()) cfg.command = Command::Compare;

    cfg.alpha = parse_complex(alpha_text);
    cfg.beta = parse_complex(beta_text);
    cfg.variant.crystal_count = variant_text == "two-crystal" ? 2 : 4;
    cfg.variant.validate();
    cfg.format = format_text == "jsonl" ? telesim::trace::Format::Jsonl
                                        : telesim::trace::Format::Text;
    if (symbols_opt->count() > 0) {
      cfg.message = telesim::classical::ClassicalMessage::parse_symbols(
          symbols_text);
    } else {
      cfg.message =
          telesim::classical::ClassicalMessage::parse_balls(message_text);
    }

    if (!cfg.out_path.empty()) {
      std::ofstream file(cfg.out_path);
      if (!file) {
        throw std::runtime_error("cannot open output file: " + cfg.out_path);
      }
      return telesim::harness::dispatch(cfg, file, std::cerr);
    }
    return telesim::harness::dispatch(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
