#pragma once

#include <filesystem>
#include <string>

namespace avf::testing {

/// Empty directory under the build tree, recreated on every call.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(AVF_TEST_TMPDIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace avf::testing
