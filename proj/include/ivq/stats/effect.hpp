#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace ivq::stats {

enum class EffectLabel { Small, Medium, Large, VeryLarge };

const char* to_string(EffectLabel label);

/// |d| < 0.2 Small; [0.2, 0.5) Medium; [0.5, 0.8) Large; >= 0.8 VeryLarge.
EffectLabel effect_label(double d);

/// Cohen's d with the pooled-variance denominator
/// sqrt(((n_a-1)s_a^2 + (n_b-1)s_b^2) / (n_a + n_b - 2)).
/// Requires n >= 2 per group and pooled sd > 0.
double cohens_d(std::span<const double> a, std::span<const double> b);

struct BootstrapOptions {
  std::size_t replicates = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct CohensDEstimate {
  double d = 0.0;
  std::array<double, 2> ci_95{0.0, 0.0};
};

/// Percentile bootstrap over both groups resampled independently. Replicate r
/// draws from its own derived stream, so the interval is identical for any
/// thread count. Degenerate replicates (zero pooled sd) are discarded.
CohensDEstimate cohens_d_ci(std::span<const double> a,
                            std::span<const double> b,
                            const BootstrapOptions& opts = {});

}  // namespace ivq::stats
