#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace levmag::oracles {

/// Philox4x64-10 counter-based generator (Salmon et al. 2011). Output is a
/// pure function of (key, counter), so any stream element can be produced
/// independently of thread scheduling.
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      ctr = one_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    __extension__ typedef unsigned __int128 u128;
    const u128 p = static_cast<u128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  static Counter one_round(const Counter& c, const Key& k) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Uniform on (0, 1] from the top 53 bits.
inline double to_unit(std::uint64_t x) { return static_cast<double>((x >> 11) + 1) * 0x1.0p-53; }

/// Four standard normals from one Philox block via Box-Muller.
inline std::array<double, 4> normals4(const Philox4x64::Counter& ctr, const Philox4x64::Key& key) {
  const auto r = Philox4x64::block(ctr, key);
  std::array<double, 4> z{};
  for (int i = 0; i < 2; ++i) {
    const double rad = std::sqrt(-2.0 * std::log(to_unit(r[2 * i])));
    const double ang = 2.0 * 3.14159265358979323846 * to_unit(r[2 * i + 1]);
    z[2 * i] = rad * std::cos(ang);
    z[2 * i + 1] = rad * std::sin(ang);
  }
  return z;
}

}  // namespace levmag::oracles
