// Runs acceptance criteria 1..10 at full size; one PASS/FAIL line each on
// stdout, details and timings on stderr.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "subcrit/verify.hpp"

int main(int argc, char** argv) {
  subcrit::VerifyOptions opt;
  opt.workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SUBCRIT_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
  }
  const auto report = subcrit::run_verify(opt, [](const subcrit::CriterionResult& r) {
    std::printf("%s\n", subcrit::criterion_line(r).c_str());
    std::fflush(stdout);
    for (const auto& d : r.details) std::fprintf(stderr, "    %s\n", d.c_str());
    std::fprintf(stderr, "    (%.1f s)\n", r.seconds);
  });
  std::printf("%s\n", report.all_pass() ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return report.all_pass() ? 0 : 1;
}
