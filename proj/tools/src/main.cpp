#include <iostream>

#include "avfusion_cli/pipeline.hpp"

int main(int argc, char** argv) {
  return avf::cli::run_pipeline(argc, argv, std::cout, std::cerr);
}
