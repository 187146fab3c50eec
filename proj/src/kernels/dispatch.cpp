#include <atomic>
#include <cstdlib>
#include <string>

#include "lcg/kernels.hpp"

namespace lcg::kernels {
namespace {

const Table* pick(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return avx2_table();
  if (name == "auto" || name.empty()) {
    const Table* t = avx2_table();
    return t != nullptr ? t : &scalar_table();
  }
  return nullptr;
}

std::atomic<const Table*>& slot() {
  static std::atomic<const Table*> current{[] {
    const char* env = std::getenv("LCG_KERNELS");
    const Table* t = pick(env != nullptr ? env : "auto");
    return t != nullptr ? t : pick("auto");
  }()};
  return current;
}

}  // namespace

const Table& active() { return *slot().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const Table* t = pick(name);
  if (t == nullptr) return false;
  slot().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace lcg::kernels
