// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance [criterion-id ...]; no ids runs all of them.
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vgr_tools/cli.hpp"
#include "vgr_tools/verify.hpp"

int main(int argc, char** argv) {
  namespace verify = vgr::verify;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > verify::kCriterionCount) {
      std::cerr << "criterion id must be in 1.." << verify::kCriterionCount << ", got " << argv[i] << '\n';
      return 2;
    }
    ids.push_back(id);
  }
  if (ids.empty()) {
    for (int id = 1; id <= verify::kCriterionCount; ++id) ids.push_back(id);
  }

  verify::Options opts;
  opts.cli = [](const std::vector<std::string>& args, std::string& out, std::string& err) {
    std::ostringstream os, es;
    const int code = vgr::cli::run_cli(args, os, es);
    out = os.str();
    err = es.str();
    return code;
  };

  int failed = 0;
  for (int id : ids) {
    const auto r = verify::run_criterion(id, opts);
    std::cout << verify::format_line(r) << '\n';
    for (const auto& note : r.notes) std::cout << "    " << note << '\n';
    std::cout.flush();
    if (!r.passed) ++failed;
  }
  std::cout << (ids.size() - failed) << '/' << ids.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
