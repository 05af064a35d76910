#pragma once
#include <iostream>
#include <string>

namespace triwell::logsink {

inline int& warn_count() {
  static int n = 0;
  return n;
}

inline void warn(const std::string& msg) {
  ++warn_count();
  std::cerr << "[warn] " << msg << "\n";
}

inline void info(const std::string& msg) { std::cerr << "[info] " << msg << "\n"; }

} // namespace triwell::logsink
