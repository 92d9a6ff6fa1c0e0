#pragma once

// Numeric formatting shared by the CLI and the tests that parse its output.
// All floating-point values are rendered with "%.12g" so that identical
// invocations produce byte-identical files.

#include <cstdio>
#include <stdexcept>
#include <string>

namespace jcest::io {

inline std::string fmt_g12(double v) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.12g", v);
  if (n < 0 || n >= static_cast<int>(sizeof buf))
    throw std::runtime_error("fmt_g12: formatting failed");
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace jcest::io
