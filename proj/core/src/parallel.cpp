#include "greedylab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace greedylab {

int worker_count() {
  static const int count = [] {
    if (const char* env = std::getenv("GREEDYLAB_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return count;
}

}  // namespace greedylab
