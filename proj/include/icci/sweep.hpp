#pragma once

// Seeded random-channel sweep certifying the one-bit gap channel by channel.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icci/channel.hpp"
#include "icci/info_bounds.hpp"
#include "icci/region.hpp"

namespace icci {

// SplitMix64 (Steele, Lea and Flood 2014): a 64-bit counter passed through a
// fixed mixing function. Sample i of a sweep draws from the stream seeded
// with mix(seed, i), so results do not depend on which worker runs it.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 base(seed ^ (index * 0xd1b54a32d192ed03ULL));
    return SplitMix64(base());
  }

 private:
  std::uint64_t state_;
};

// Four magnitudes, each log-uniform on [lo, hi].
ChannelGains<double> sample_channel(SplitMix64& rng, double lo, double hi);

struct SweepConfig {
  std::uint64_t samples{100};
  std::uint64_t seed{42};
  double mag_min{1e-3};
  double mag_max{1e3};
  double bits{1.0};
  double tol{kMembershipTol};
  // Worker count; 0 reads ICCI_THREADS, falling back to the hardware count.
  unsigned threads{0};
  // When set, every sample uses this channel instead of a random draw.
  std::optional<ChannelGains<double>> fixed_channel;
};

// Throws DomainError on an invalid configuration.
void validate(const SweepConfig& config);

struct ChannelCheck {
  ChannelGains<double> gains;
  GapDeltas<double> deltas;
  bool deltas_ok{true};
  WithinBitsReport<double> containment;  // inner vertices against outer
  WithinBitsReport<double> gap;          // outer vertices shifted into inner
  bool passed() const { return deltas_ok && containment.holds && gap.holds; }
};

ChannelCheck check_channel(const ChannelGains<double>& gains, double bits,
                           double tol = kMembershipTol);

struct SweepFailure {
  std::uint64_t index{0};
  ChannelCheck check;
};

struct SweepReport {
  std::uint64_t samples{0};
  std::uint64_t pass_count{0};
  std::uint64_t fail_count{0};
  // Smallest within-bits slack seen; ties go to the lowest sample index.
  std::uint64_t worst_index{0};
  ChannelGains<double> worst_channel;
  int worst_constraint{-1};
  double worst_slack{0};
  std::vector<SweepFailure> failures;  // ascending index
  double elapsed_seconds{0};
};

SweepReport run_gap_sweep(const SweepConfig& config);

// Deterministic text rendering; elapsed time is deliberately left out.
std::string render_text(const SweepReport& report, const SweepConfig& config);
std::string render_json(const SweepReport& report, const SweepConfig& config);

unsigned resolve_threads(unsigned requested);

}  // namespace icci
