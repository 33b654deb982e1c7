#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bowditch/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bowditch representation recognition for rank-2 free groups"};

  bowditch::RunConfig cfg;
  std::string c_override, k_override;
  app.add_option("--input", cfg.input_path, "input JSON file")->required();
  app.add_option("--command", cfg.command,
                 "certify | scan | oracle | dump-tree | dump-levelset | check-identities | "
                 "verify-certificate");
  app.add_option("--c-override", c_override, "override the constant C (default 432*delta)");
  app.add_option("--k-override", k_override, "override the level K (default C + delta)");
  app.add_option("--budget", cfg.budget, "step budget (>= 1)");
  app.add_option("--precision-bits", cfg.precision_bits, "precision parameter (default 256)");
  app.add_option("--output", cfg.output_path, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json | csv");

  CLI11_PARSE(app, argc, argv);

  if (cfg.budget < 1) {
    std::cerr << "input error: budget must be >= 1\n";
    return 2;
  }
  try {
    if (!c_override.empty()) cfg.c_override = bowditch::parse_real(c_override);
    if (!k_override.empty()) cfg.k_override = bowditch::parse_real(k_override);
  } catch (const std::exception& e) {
    std::cerr << "input error: bad override value: " << e.what() << "\n";
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  int code = bowditch::run(cfg, std::cout, std::cerr);
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cerr << "wall_time_ms=" << elapsed.count() << "\n";
  return code;
}
