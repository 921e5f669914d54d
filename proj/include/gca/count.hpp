#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gca {

class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value in N ∪ {omega}.  omega is produced by rule, never by overflow;
// finite arithmetic that would leave 64 bits throws instead.
struct Count {
  std::uint64_t n = 0;
  bool omega = false;

  static Count fin(std::uint64_t v) { return {v, false}; }
  static Count inf() { return {0, true}; }

  bool is_omega() const { return omega; }
  bool is_zero() const { return !omega && n == 0; }

  friend bool operator==(const Count&, const Count&) = default;

  Count operator+(const Count& o) const {
    if (omega || o.omega) return inf();
    std::uint64_t r;
    if (__builtin_add_overflow(n, o.n, &r))
      throw OverflowError("count addition overflow");
    return fin(r);
  }
  Count operator*(const Count& o) const {
    if (is_zero() || o.is_zero()) return fin(0);  // 0 * omega = 0
    if (omega || o.omega) return inf();
    std::uint64_t r;
    if (__builtin_mul_overflow(n, o.n, &r))
      throw OverflowError("count multiplication overflow");
    return fin(r);
  }
  Count& operator+=(const Count& o) { return *this = *this + o; }
  Count& operator*=(const Count& o) { return *this = *this * o; }

  std::string str() const { return omega ? "omega" : std::to_string(n); }
};

// Edge multiplicity: a positive integer or omega.
struct Multiplicity {
  std::uint64_t n = 1;
  bool omega = false;

  static Multiplicity fin(std::uint64_t v) { return {v, false}; }
  static Multiplicity inf() { return {0, true}; }

  Count as_count() const { return omega ? Count::inf() : Count::fin(n); }

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

  std::string str() const { return omega ? "w" : std::to_string(n); }
};

}  // namespace gca
