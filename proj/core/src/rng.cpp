#include "opineq/rng.hpp"

#include <cmath>

namespace opineq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) * M_SQRT1_2;
}

}  // namespace opineq
