#ifndef POSEDIR_SHA256_HPP_
#define POSEDIR_SHA256_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace posedir {

// Minimal SHA-256 for corpus/checkpoint digests.
class Sha256 {
 public:
  Sha256() { reset(); }

  void reset();
  void update(const void* data, std::size_t len);
  // hex digest; finalizes a copy, so update() may continue afterwards
  std::string hex_digest() const;

  static std::string of_bytes(const void* data, std::size_t len);
  static std::string of_string(const std::string& s);
  static std::string of_file(const std::string& path);

 private:
  void process_block(const std::uint8_t* block);
  void finalize(std::array<std::uint8_t, 32>& out) const;

  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, 64> buffer_;
  std::uint64_t total_len_ = 0;
  std::size_t buffer_len_ = 0;
};

}  // namespace posedir

#endif  // POSEDIR_SHA256_HPP_
