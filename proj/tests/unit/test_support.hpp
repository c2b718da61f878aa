#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "simest/core/error.hpp"
#include "simest/core/types.hpp"

#define EXPECT_ERROR_CODE(stmt, expected)                                           \
  do {                                                                              \
    try {                                                                           \
      (void)(stmt);                                                                 \
      ADD_FAILURE() << "expected simest::Error from " #stmt;                        \
    } catch (const simest::Error& err_) {                                           \
      EXPECT_EQ(err_.code(), expected) << simest::to_string(err_.code()) << ": " << err_.what(); \
    }                                                                               \
  } while (0)

namespace testgen {

/// Small random-input generator for property tests. Kept separate from the
/// library's streams so test inputs do not share randomness with the code
/// under test.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }
  simest::Index size(simest::Index lo, simest::Index hi) {
    return std::uniform_int_distribution<simest::Index>(lo, hi)(engine_);
  }

  /// Nonnegative weights with at least one positive entry and some exact zeros.
  simest::Vector nonneg_weights(simest::Index n) {
    simest::Vector w(n);
    for (simest::Index i = 0; i < n; ++i) w[i] = uniform(0.0, 1.0) < 0.2 ? 0.0 : std::exp(uniform(-10.0, 10.0));
    w[size(0, n - 1)] = uniform(0.5, 2.0);
    return w;
  }

  simest::Vector normals(simest::Index n) {
    simest::Vector v(n);
    for (simest::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  simest::Matrix square(simest::Index k, double lo = -2.0, double hi = 2.0) {
    simest::Matrix m(k, k);
    for (simest::Index i = 0; i < k; ++i)
      for (simest::Index j = 0; j < k; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  /// Symmetric positive definite with condition number bounded by construction.
  simest::Matrix spd(simest::Index k) {
    const simest::Matrix a = square(k);
    return a * a.transpose() + simest::Matrix::Identity(k, k) * uniform(0.1, 1.0);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace testgen
