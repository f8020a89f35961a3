// Regenerates the shipped fixture catalog from the built-in list.

#include <cstdio>
#include <string>

#include "twistlab/json_io.hpp"
#include "twistlab/relations.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "data/fixtures.json";
  const auto catalog = twistlab::builtin_catalog();
  twistlab::save_catalog(path, catalog);
  std::printf("wrote %zu fixtures to %s\n", catalog.size(), path.c_str());
  return 0;
}
