#include "trisph/parallel.hpp"

#include <cstdlib>

namespace trisph {

namespace {

int g_thread_count = 0;

int default_thread_count() {
  if (const char* env = std::getenv("TRISPH_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

}  // namespace

int thread_count() {
  return g_thread_count >= 1 ? g_thread_count : default_thread_count();
}

void set_thread_count(int n) { g_thread_count = n >= 1 ? n : 0; }

}  // namespace trisph
