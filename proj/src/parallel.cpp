#include "rst/parallel.hpp"

namespace rst {
namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned default_workers() {
  const unsigned w = g_workers.load();
  if (w != 0) return w;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_default_workers(unsigned n) { g_workers.store(n); }

}  // namespace rst
