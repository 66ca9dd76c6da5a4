#pragma once

#include <cstdio>
#include <string>

#include "frobcoord/tensor.hpp"

namespace frobcoord {

/// Entries separated by single spaces, `digits` significant digits each.
template <Semiring S>
std::string format_plain(const Tensor<S>& t, int digits = 12) {
  std::string out;
  char buf[64];
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, static_cast<double>(t[k]));
    if (k != 0) out += ' ';
    out += buf;
  }
  return out;
}

/// Wires and entries on one line, for diagnostics.
template <Semiring S>
std::string describe(const Tensor<S>& t) {
  return to_string(t.wires()) + " [" + format_plain(t, 17) + "]";
}

}  // namespace frobcoord
