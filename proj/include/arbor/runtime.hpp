#pragma once
// Round accounting and reproducible randomness for the simulated LOCAL runtime.

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace arbor {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

// ---------------------------------------------------------------------------
// RoundLedger: phases charge radius x repetitions; totals are additive so
// per-cluster partial ledgers can be merged in any order.

struct RoundLedger {
  struct Phase {
    std::string label;
    long long radius = 0;
    long long reps = 1;
  };
  std::vector<Phase> phases;
  long long total_rounds = 0;

  void charge(const std::string& label, long long radius, long long reps = 1) {
    if (radius < 0 || reps < 1) throw Error("bad-charge", "charge_phase: radius >= 0, reps >= 1");
    phases.push_back({label, radius, reps});
    total_rounds += radius * reps;
  }

  void merge(const RoundLedger& other) {
    for (const auto& p : other.phases) phases.push_back(p);
    total_rounds += other.total_rounds;
  }

  nlohmann::json to_json() const {
    nlohmann::json ph = nlohmann::json::array();
    for (const auto& p : phases)
      ph.push_back({{"label", p.label}, {"radius", p.radius}, {"reps", p.reps}});
    return {{"phases", ph}, {"total_rounds", total_rounds}};
  }
};

// ---------------------------------------------------------------------------
// RandomStream: counter-based generator keyed by (root_seed, hashed path).
// Distinct derivation paths give independent-looking streams, and draws are a
// pure function of (root_seed, path, counter) -- replay safe and order
// independent across parallel clusters.

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
inline uint64_t fnv1a(uint64_t h, const void* data, size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace detail

class RandomStream {
 public:
  explicit RandomStream(uint64_t root_seed) : root_seed_(root_seed) {
    path_hash_ = detail::splitmix64(root_seed ^ 0x243f6a8885a308d3ULL);
  }

  RandomStream derive(const std::string& label, uint64_t index = 0) const {
    RandomStream child(*this);
    child.path_hash_ = detail::fnv1a(child.path_hash_, label.data(), label.size());
    child.path_hash_ = detail::fnv1a(child.path_hash_, &index, sizeof index);
    child.path_hash_ = detail::splitmix64(child.path_hash_);
    child.counter_ = 0;
    return child;
  }

  uint64_t next_u64() { return detail::splitmix64(path_hash_ ^ detail::splitmix64(counter_++)); }

  // uniform in [0, n)
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) throw Error("bad-range", "uniform_int: empty range");
    // rejection sampling to kill modulo bias
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  double uniform_real() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform_real() < p; }

  double exponential(double rate) {
    double u = uniform_real();
    if (u >= 1.0) u = 0.9999999999999999;
    return -std::log1p(-u) / rate;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_int(i)]);
  }

  uint64_t root_seed() const { return root_seed_; }

 private:
  uint64_t root_seed_;
  uint64_t path_hash_;
  uint64_t counter_ = 0;
};

inline int ceil_log2(long long n) {
  int r = 0;
  long long p = 1;
  while (p < n) {
    p <<= 1;
    ++r;
  }
  return r;  // ceil(log2 n); 0 for n <= 1
}

}  // namespace arbor
