#include "hts/count.hpp"

#include <algorithm>
#include <stdexcept>

#include "hts/errors.hpp"

namespace hts {

namespace {
constexpr u128 kMax = ~u128{0};
}

Count Count::power_of_two(int bits) {
  if (bits < 0 || bits >= 128) throw CapacityError("power of two out of 128-bit range");
  return from_raw(u128{1} << bits);
}

std::uint64_t Count::to_u64() const {
  if (!fits_u64()) throw CapacityError("count " + to_string() + " exceeds 64 bits");
  return static_cast<std::uint64_t>(value_);
}

std::int64_t Count::to_i64() const {
  if (value_ > static_cast<u128>(std::numeric_limits<std::int64_t>::max()))
    throw CapacityError("count " + to_string() + " exceeds signed 64 bits");
  return static_cast<std::int64_t>(value_);
}

i128 Count::to_i128() const {
  if (value_ > (kMax >> 1)) throw CapacityError("count " + to_string() + " exceeds signed 128 bits");
  return static_cast<i128>(value_);
}

std::string Count::to_string() const {
  if (value_ == 0) return "0";
  std::string s;
  for (u128 v = value_; v != 0; v /= 10) s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
  std::reverse(s.begin(), s.end());
  return s;
}

Count operator+(Count a, Count b) {
  if (kMax - a.value_ < b.value_) throw CapacityError("count addition overflows 128 bits");
  return Count::from_raw(a.value_ + b.value_);
}

Count operator-(Count a, Count b) {
  if (a.value_ < b.value_) throw std::domain_error("count subtraction below zero");
  return Count::from_raw(a.value_ - b.value_);
}

Count operator*(Count a, Count b) {
  if (a.value_ != 0 && b.value_ > kMax / a.value_)
    throw CapacityError("count multiplication overflows 128 bits");
  return Count::from_raw(a.value_ * b.value_);
}

Count operator/(Count a, Count b) {
  if (b.value_ == 0) throw std::domain_error("count division by zero");
  return Count::from_raw(a.value_ / b.value_);
}

Count operator%(Count a, Count b) {
  if (b.value_ == 0) throw std::domain_error("count division by zero");
  return Count::from_raw(a.value_ % b.value_);
}

void enforce_guard(Count c, Count guard, const char* what) {
  if (c > guard)
    throw CapacityError(std::string(what) + " = " + c.to_string() + " exceeds magnitude guard " +
                        guard.to_string());
}

std::string to_string(i128 v) {
  if (v >= 0) return Count::from_raw(static_cast<u128>(v)).to_string();
  // -(v+1)+1 avoids overflow at the minimum value.
  return "-" + (Count::from_raw(static_cast<u128>(-(v + 1))) + Count(1)).to_string();
}

}  // namespace hts
