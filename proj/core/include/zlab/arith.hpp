#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zlab {

// d_k(n) for 1 <= n <= limit. counts[0] is unused and zero.
struct DivisorTable {
  int k = 0;
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t operator[](std::uint64_t n) const { return counts[n]; }
  // Bounds-checked access; throws CapacityError beyond limit.
  std::uint64_t at(std::uint64_t n) const;
};

inline constexpr std::uint64_t kDefaultDivisorBudget = 50'000'000;  // table entries

// Iterated Dirichlet convolution with the constant function, in place.
// Throws DomainError for k outside [1, 8] or N < 1, CapacityError if
// N exceeds budget.
DivisorTable divisor_sieve(int k, std::uint64_t N, std::uint64_t budget = kDefaultDivisorBudget);

// Ordered k-tuples with product n, counted by nested trial-division loops.
// Limited to k <= 4 and n <= 1e5 (CapacityError otherwise).
std::uint64_t divisor_brute(int k, std::uint64_t n);

// Binary cache: 16-byte header ("DKT1", uint32 k, uint64 N) followed by N
// little-endian uint64 counts for n = 1..N.
void save_divisor_table(const DivisorTable& table, const std::string& path);
DivisorTable load_divisor_table(const std::string& path);

}  // namespace zlab
