#ifndef POSEDIR_COMMON_HPP_
#define POSEDIR_COMMON_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace posedir {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatX = Mat<double>;
using VecX = Vec<double>;
using MatF = Mat<float>;
using VecF = Vec<float>;
using MatB = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Error taxonomy; the CLI maps these to exit codes (validation 1, I/O 2,
// numerical 3).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct StructuralError : ValidationError {
  using ValidationError::ValidationError;
};
struct IoError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};
struct CompatibilityError : Error {
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}
inline void require_shape(bool cond, const std::string& msg) {
  if (!cond) throw StructuralError(msg);
}

// 64-bit FNV-1a, used for seed splitting and hash-based dataset splits.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
  return mix_seed(seed, fnv1a64(tag));
}

}  // namespace posedir

#endif  // POSEDIR_COMMON_HPP_
