#include "trispec/parallel.hpp"

namespace trispec {

namespace {
std::atomic<int> thread_setting{0};
}

void set_threads(int n) { thread_setting.store(n < 0 ? 0 : n); }

int threads() {
  int n = thread_setting.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace trispec
