#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testing {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

// Hand-rolled property runner: draws `cases` inputs from a fixed seed so a
// failure reproduces on every run.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testing
