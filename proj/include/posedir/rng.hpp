#ifndef POSEDIR_RNG_HPP_
#define POSEDIR_RNG_HPP_

#include "posedir/common.hpp"

#include <cmath>
#include <random>

namespace posedir {

// Deterministic RNG. All randomness in the project flows from a single root
// seed through split(): a child stream's seed is mix_seed(parent_seed, tag),
// independent of how much the parent has been consumed. Distributions are
// implemented explicitly (not via std:: distributions) so streams are
// bit-stable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  Rng split(std::string_view tag) const { return Rng(mix_seed(seed_, tag)); }
  Rng split(std::uint64_t salt) const { return Rng(mix_seed(seed_, salt)); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return gen_(); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive range
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * M_PI * u2);
  }

  template <typename S>
  Mat<S> normal_matrix(Eigen::Index rows, Eigen::Index cols, double stddev = 1.0) {
    Mat<S> m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i)
        m(i, j) = static_cast<S>(stddev * normal());
    return m;
  }

  // Fisher-Yates
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace posedir

#endif  // POSEDIR_RNG_HPP_
