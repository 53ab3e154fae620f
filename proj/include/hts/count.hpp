#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace hts {

using u128 = unsigned __int128;
using i128 = __int128;

/// Exact non-negative count of arcs, selections or assignments.
///
/// Backed by a 128-bit word. Every arithmetic operation is checked: a result
/// that does not fit raises CapacityError, subtraction below zero raises
/// std::domain_error. Magnitude guards (see kDefaultGuard) are applied by the
/// producers of counts, not by the arithmetic itself.
class Count {
 public:
  constexpr Count() = default;
  constexpr Count(std::uint64_t v) : value_(v) {}  // NOLINT: implicit by intent

  static constexpr Count from_raw(u128 v) {
    Count c;
    c.value_ = v;
    return c;
  }
  /// 2^bits, for bits < 128.
  static Count power_of_two(int bits);

  constexpr u128 raw() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  bool fits_u64() const { return value_ <= std::numeric_limits<std::uint64_t>::max(); }
  /// Throws CapacityError when the value does not fit.
  std::uint64_t to_u64() const;
  std::int64_t to_i64() const;
  i128 to_i128() const;

  std::string to_string() const;

  friend Count operator+(Count a, Count b);
  friend Count operator-(Count a, Count b);
  friend Count operator*(Count a, Count b);
  friend Count operator/(Count a, Count b);
  friend Count operator%(Count a, Count b);
  Count& operator+=(Count o) { return *this = *this + o; }
  Count& operator-=(Count o) { return *this = *this - o; }
  Count& operator*=(Count o) { return *this = *this * o; }

  friend constexpr bool operator==(Count a, Count b) { return a.value_ == b.value_; }
  friend constexpr std::strong_ordering operator<=>(Count a, Count b) {
    return a.value_ <=> b.value_;
  }

 private:
  u128 value_ = 0;
};

/// Default magnitude guard for counts produced from shapes: 2^127.
inline constexpr Count kDefaultGuard = Count::from_raw(u128{1} << 127);

/// Throws CapacityError naming `what` when c > guard.
void enforce_guard(Count c, Count guard, const char* what);

std::string to_string(i128 v);

}  // namespace hts
