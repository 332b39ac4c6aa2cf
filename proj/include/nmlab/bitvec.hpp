#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nmlab {

/// Packed bit sequence of fixed length. Unused high bits of the last word
/// are kept zero, so words can be compared and hashed directly.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length);

  /// Low `length` bits of `value`, bit i of the word becoming bit i.
  static BitVector from_word(std::uint64_t value, std::size_t length);

  /// Strict canonical hex: lowercase, exactly ceil(length/4) digits,
  /// little-endian bit order within the encoded integer, padding bits zero.
  static BitVector from_hex(const std::string& hex, std::size_t length);
  std::string to_hex() const;

  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);

  /// Number of set bits.
  std::size_t weight() const;

  BitVector operator^(const BitVector& other) const;
  bool operator==(const BitVector& other) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// weight(a ^ b) without allocating the intermediate vector.
std::size_t xor_weight(const BitVector& a, const BitVector& b);

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const;
};

}  // namespace nmlab
