// One line per criterion, exit 1 if any fails.
#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>

#include "app/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string suite = "full", out = "acceptance_out";
  app.add_option("--suite", suite)->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--out", out);
  CLI11_PARSE(app, argc, argv);

  try {
    // ctest hides passing output, so the lines are kept next to the manifests too
    std::filesystem::create_directories(out);
    std::ofstream keep(std::filesystem::path(out) / "criteria.txt");
    const iaw::AcceptanceReport r = iaw::run_acceptance(suite, out, [&](const std::string& line) {
      std::printf("%s\n", line.c_str());
      std::fflush(stdout);
      keep << line << '\n' << std::flush;
    });
    const char* verdict = r.passed() ? "acceptance: PASS" : "acceptance: FAIL";
    std::printf("%s\n", verdict);
    keep << verdict << '\n';
    return r.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 3;
  }
}
