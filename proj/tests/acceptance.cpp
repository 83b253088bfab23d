#include <flagalg/selftest.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace st = flagalg::selftest;

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > st::kCriteria) {
    std::cerr << "criterion must be in 1.." << st::kCriteria << "\n";
    return 2;
  }
  bool ok = true;
  for (int id = 1; id <= st::kCriteria; ++id) {
    if (only != 0 && id != only) continue;
    const auto r = st::run(id);
    std::cout << st::format(r) << std::endl;
    ok = ok && r.status == st::Status::Pass;
  }
  return ok ? 0 : 1;
}
