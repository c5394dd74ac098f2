#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace forge {

// Exponent vector over at most 8 variables, one byte each, packed into a word.
class MultiIndex {
 public:
  static constexpr int kMaxVars = 8;

  MultiIndex() = default;
  static MultiIndex unit(int i, int e = 1) {
    MultiIndex m;
    m.set(i, e);
    return m;
  }
  static MultiIndex from_bits(std::uint64_t b) {
    MultiIndex m;
    m.bits_ = b;
    return m;
  }

  int operator[](int i) const { return static_cast<int>((bits_ >> (8 * i)) & 0xff); }
  void set(int i, int e) {
    if (e < 0 || e > 255) throw std::overflow_error("multi-index exponent out of range");
    bits_ = (bits_ & ~(std::uint64_t{0xff} << (8 * i))) | (static_cast<std::uint64_t>(e) << (8 * i));
  }
  int total() const {
    int s = 0;
    for (std::uint64_t b = bits_; b; b >>= 8) s += static_cast<int>(b & 0xff);
    return s;
  }
  bool is_zero() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }
  int first_nonzero() const {
    for (int i = 0; i < kMaxVars; ++i)
      if ((*this)[i]) return i;
    return -1;
  }

  friend MultiIndex operator+(MultiIndex a, MultiIndex b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a[i] + b[i] > 255) throw std::overflow_error("multi-index exponent out of range");
    return from_bits(a.bits_ + b.bits_);
  }
  // Componentwise a <= b.
  friend bool leq(MultiIndex a, MultiIndex b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  // Requires leq(b, a).
  friend MultiIndex operator-(MultiIndex a, MultiIndex b) { return from_bits(a.bits_ - b.bits_); }

  friend bool operator==(MultiIndex a, MultiIndex b) { return a.bits_ == b.bits_; }
  friend bool operator!=(MultiIndex a, MultiIndex b) { return a.bits_ != b.bits_; }
  // Lexicographic with variable 0 most significant.
  friend bool operator<(MultiIndex a, MultiIndex b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }

  // "y1^2*y3" style; empty string for the zero index.
  std::string to_string(const std::string& prefix, int dim) const {
    std::string s;
    for (int i = 0; i < dim; ++i) {
      int e = (*this)[i];
      if (!e) continue;
      if (!s.empty()) s += "*";
      s += prefix + std::to_string(i + 1);
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::uint64_t bits_ = 0;
};

// Multinomial factor a! = prod a_i!.
inline long long factorial_of(MultiIndex a) {
  long long f = 1;
  for (int i = 0; i < MultiIndex::kMaxVars; ++i)
    for (int k = 2; k <= a[i]; ++k) f *= k;
  return f;
}

// All multi-indices over dim variables with total degree <= max_total,
// ordered by degree, then with earlier variables carrying larger exponents.
template <class F>
void for_each_index(int dim, int max_total, F&& f) {
  if (dim == 0) {
    f(MultiIndex());
    return;
  }
  std::function<void(int, int, MultiIndex)> exact = [&](int var, int left, MultiIndex cur) {
    if (var == dim - 1) {
      cur.set(var, left);
      f(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.set(var, e);
      exact(var + 1, left - e, cur);
    }
  };
  for (int d = 0; d <= max_total; ++d) exact(0, d, MultiIndex());
}

}  // namespace forge

template <>
struct std::hash<forge::MultiIndex> {
  std::size_t operator()(forge::MultiIndex m) const noexcept { return std::hash<std::uint64_t>{}(m.bits()); }
};
