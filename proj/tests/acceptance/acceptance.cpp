// Runs acceptance criteria and prints one line each:
//   PASS  4 Magnus depths (12.31 s, limit 300 s): gamma(b_0)=1; ...
// Exit status is 0 only if every selected criterion passed.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "lcslab/verify.hpp"

int main(int argc, char** argv) {
  using namespace lcslab;
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  std::string checkpoint_dir;
  ExperimentConfig config;
  app.add_option("--criterion", ids, "criterion number, repeatable (default: all)")
      ->check(CLI::Range(1, kCriterionCount));
  app.add_option("--checkpoint-dir", checkpoint_dir, "directory for search checkpoints");
  app.add_option("--workers", config.workers, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  if (!checkpoint_dir.empty()) {
    std::filesystem::create_directories(checkpoint_dir);
    config.checkpoint_dir = checkpoint_dir;
  }
  if (ids.empty())
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);

  bool all_pass = true;
  for (int id : ids) {
    const auto r = run_criterion(id, config);
    const bool pass = r.status == Status::pass;
    all_pass &= pass;
    std::printf("%-5s %2d %s (%.2f s, limit %.0f s): %s%s\n", pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.limit_seconds, pass ? "" : ("[" + status_name(r.status) + "] ").c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
