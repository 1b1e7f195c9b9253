#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "stipsim/errors.hpp"

namespace stipsim {

// Exact integer time. One tick is the unit transition time, the same for
// every machine; the distinguished value infinity() absorbs addition and
// dominates every finite value in comparisons.
class Tick {
 public:
  constexpr Tick() = default;
  constexpr explicit Tick(std::uint64_t v) : v_(v) {}

  static constexpr Tick infinity() {
    Tick t;
    t.v_ = kInf;
    return t;
  }

  constexpr bool is_infinite() const { return v_ == kInf; }

  std::uint64_t count() const {
    if (is_infinite()) throw ContractError("count() on infinite tick");
    return v_;
  }

  friend constexpr bool operator==(Tick a, Tick b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Tick a, Tick b) { return a.v_ != b.v_; }
  // kInf is the largest representable value, so ordinary integer comparison
  // already makes infinity dominate.
  friend constexpr bool operator<(Tick a, Tick b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(Tick a, Tick b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(Tick a, Tick b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(Tick a, Tick b) { return a.v_ >= b.v_; }

  friend Tick operator+(Tick a, Tick b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    if (a.v_ > kInf - 1 - b.v_) throw ContractError("tick addition overflow");
    return Tick(a.v_ + b.v_);
  }

  friend Tick operator*(Tick a, std::uint64_t k) {
    if (a.is_infinite()) return infinity();
    if (k != 0 && a.v_ > (kInf - 1) / k) throw ContractError("tick multiply overflow");
    return Tick(a.v_ * k);
  }

  std::string to_string() const {
    return is_infinite() ? "inf" : std::to_string(v_);
  }

  // Accepts a decimal tick count or "inf".
  static std::optional<Tick> parse(std::string_view s) {
    if (s == "inf") return infinity();
    if (s.empty() || s.size() > 19) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return Tick(v);
  }

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v_ = 0;
};

}  // namespace stipsim
