#include "zlab/arith.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "zlab/errors.hpp"

namespace zlab {
namespace {

constexpr std::array<char, 4> kMagic = {'D', 'K', 'T', '1'};

template <class T>
void put_le(std::ostream& out, T v) {
  std::array<unsigned char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
  return v;
}

std::uint64_t brute_rec(int k, std::uint64_t n) {
  if (k == 1) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) total += brute_rec(k - 1, n / d);
  }
  return total;
}

}  // namespace

std::uint64_t DivisorTable::at(std::uint64_t n) const {
  if (n < 1 || n > limit) {
    std::ostringstream msg;
    msg << "divisor table (k = " << k << ") covers n <= " << limit << ", requested " << n;
    throw CapacityError(msg.str());
  }
  return counts[n];
}

DivisorTable divisor_sieve(int k, std::uint64_t N, std::uint64_t budget) {
  if (k < 1 || k > 8) throw DomainError("divisor_sieve: k must lie in [1, 8]");
  if (N < 1) throw DomainError("divisor_sieve: N must be >= 1");
  if (N > budget) {
    std::ostringstream msg;
    msg << "divisor_sieve: N = " << N << " exceeds budget " << budget;
    throw CapacityError(msg.str());
  }
  DivisorTable table;
  table.k = k;
  table.limit = N;
  table.counts.assign(N + 1, 1);
  table.counts[0] = 0;
  auto& c = table.counts;
  // d_{j+1}(m) = sum_{d | m} d_j(d). Walking d downwards keeps c[d] at its
  // previous-generation value when it is pushed to its multiples.
  for (int j = 1; j < k; ++j) {
    for (std::uint64_t d = N / 2; d >= 1; --d) {
      const std::uint64_t v = c[d];
      for (std::uint64_t m = 2 * d; m <= N; m += d) c[m] += v;
    }
  }
  return table;
}

std::uint64_t divisor_brute(int k, std::uint64_t n) {
  if (k < 1 || k > 4 || n < 1 || n > 100000) {
    throw CapacityError("divisor_brute: limited to 1 <= k <= 4 and 1 <= n <= 1e5");
  }
  return brute_rec(k, n);
}

void save_divisor_table(const DivisorTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.k));
  put_le<std::uint64_t>(out, table.limit);
  for (std::uint64_t n = 1; n <= table.limit; ++n) put_le<std::uint64_t>(out, table.counts[n]);
  if (!out) throw Error("write failed for " + path);
}

DivisorTable load_divisor_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(path + ": not a divisor table");
  DivisorTable table;
  table.k = static_cast<int>(get_le<std::uint32_t>(in));
  table.limit = get_le<std::uint64_t>(in);
  if (!in || table.k < 1 || table.k > 8) throw Error(path + ": corrupt header");
  table.counts.assign(table.limit + 1, 0);
  for (std::uint64_t n = 1; n <= table.limit; ++n) table.counts[n] = get_le<std::uint64_t>(in);
  if (!in) throw Error(path + ": truncated");
  return table;
}

}  // namespace zlab
