#include "hyperreg/rng.hpp"

#include "hyperreg/errors.hpp"

#include <algorithm>
#include <numeric>

namespace hyperreg {

std::vector<std::size_t> Rng::sample(std::size_t n, std::size_t k) {
  if (k > n) throw DomainError("sample larger than population");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace hyperreg
