// rng.h
//
// Counter-based random number generation (Philox4x32-10). Every trajectory
// owns one stream, identified by a 64-bit stream id under a 64-bit seed;
// draws are a pure function of (seed, stream, counter), so results do not
// depend on worker scheduling.

#pragma once

#include <cstdint>

namespace entropic {

class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) {
    key_[0] = static_cast<uint32_t>(seed);
    key_[1] = static_cast<uint32_t>(seed >> 32);
    ctr_[0] = 0;
    ctr_[1] = 0;
    ctr_[2] = static_cast<uint32_t>(stream);
    ctr_[3] = static_cast<uint32_t>(stream >> 32);
  }

  uint64_t next_u64() {
    if (have_ == 0) refill();
    --have_;
    return buf_[have_];
  }

  // uniform in [0, 1) with 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bool() { return (next_u64() & 1u) != 0; }

  // mixes two 64-bit values into a fresh stream id (splitmix finalizer);
  // used to key per-point / per-trajectory streams
  static uint64_t derive_stream(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
  }

  void refill() {
    uint32_t c0 = ctr_[0], c1 = ctr_[1], c2 = ctr_[2], c3 = ctr_[3];
    uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      c0 = hi1 ^ c1 ^ k0;
      c1 = lo1;
      c2 = hi0 ^ c3 ^ k1;
      c3 = lo0;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    buf_[0] = (static_cast<uint64_t>(c1) << 32) | c0;
    buf_[1] = (static_cast<uint64_t>(c3) << 32) | c2;
    have_ = 2;
    // 64-bit draw counter in words 0,1; words 2,3 hold the stream id
    if (++ctr_[0] == 0) ++ctr_[1];
  }

  uint32_t key_[2];
  uint32_t ctr_[4];
  uint64_t buf_[2] = {0, 0};
  int have_ = 0;
};

}  // namespace entropic
