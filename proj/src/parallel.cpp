#include "smallf/parallel.hpp"

namespace smallf {

namespace {
std::atomic<int> g_threads{1};
}

int parallelism() { return g_threads.load(); }

void set_parallelism(int threads) { g_threads.store(threads < 1 ? 1 : threads); }

}  // namespace smallf
