// Regenerates the bundled synthetic scenario file from its in-code builder.
#include <iostream>

#include "lezopt/fixtures.hpp"
#include "lezopt/scenario.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "scenarios/idf_fixture.json";
  try {
    lezopt::save_scenario(lezopt::make_idf_fixture(), path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote " << path << "\n";
  return 0;
}
