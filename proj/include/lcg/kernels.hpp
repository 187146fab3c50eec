#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the bitset set algebra and the grid
// measure sums. Each kernel has a scalar reference implementation and an
// AVX2 variant; the active table is chosen once at startup from CPUID and
// may be overridden with LCG_KERNELS=scalar|avx2.
namespace lcg::kernels {

struct Table {
  const char* name;
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*andnot_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  // True iff a & ~b has a set bit.
  bool (*any_andnot)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
};

const Table& scalar_table();
// nullptr when the build or the running CPU has no AVX2.
const Table* avx2_table();

const Table& active();
// "scalar", "avx2" or "auto". Returns false if the request cannot be honoured.
bool select(std::string_view name);

inline void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().or_into(dst.data(), src.data(), dst.size());
}
inline void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().and_into(dst.data(), src.data(), dst.size());
}
inline void andnot_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().andnot_into(dst.data(), src.data(), dst.size());
}
inline bool any_andnot(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active().any_andnot(a.data(), b.data(), a.size());
}
inline std::size_t popcount(std::span<const std::uint64_t> a) {
  return active().popcount(a.data(), a.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace lcg::kernels
