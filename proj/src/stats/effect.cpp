#include "ivq/stats/effect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ivq/error.hpp"
#include "ivq/parallel.hpp"
#include "ivq/rng.hpp"
#include "ivq/stats/descriptive.hpp"

namespace ivq::stats {
namespace {

double pooled_sd(std::span<const double> a, std::span<const double> b) {
  const double ma = mean(a), mb = mean(b);
  double ssa = 0.0, ssb = 0.0;
  for (double x : a) ssa += (x - ma) * (x - ma);
  for (double x : b) ssb += (x - mb) * (x - mb);
  const double df = static_cast<double>(a.size() + b.size() - 2);
  return std::sqrt((ssa + ssb) / df);
}

double d_or_nan(std::span<const double> a, std::span<const double> b) {
  const double sp = pooled_sd(a, b);
  if (sp <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (mean(a) - mean(b)) / sp;
}

/// Linear-interpolation quantile over a sorted sample (position p*(n-1)).
double quantile_sorted(const std::vector<double>& xs, double p) {
  const double pos = p * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= xs.size()) return xs.back();
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

}  // namespace

const char* to_string(EffectLabel label) {
  switch (label) {
    case EffectLabel::Small: return "Small";
    case EffectLabel::Medium: return "Medium";
    case EffectLabel::Large: return "Large";
    case EffectLabel::VeryLarge: return "Very Large";
  }
  return "?";
}

EffectLabel effect_label(double d) {
  const double a = std::abs(d);
  if (a < 0.2) return EffectLabel::Small;
  if (a < 0.5) return EffectLabel::Medium;
  if (a < 0.8) return EffectLabel::Large;
  return EffectLabel::VeryLarge;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DataError("cohens_d: each group needs at least 2 observations");
  }
  const double sp = pooled_sd(a, b);
  if (sp <= 0.0) throw DataError("cohens_d: pooled standard deviation is zero");
  return (mean(a) - mean(b)) / sp;
}

CohensDEstimate cohens_d_ci(std::span<const double> a,
                            std::span<const double> b,
                            const BootstrapOptions& opts) {
  CohensDEstimate est;
  est.d = cohens_d(a, b);
  if (opts.replicates == 0) {
    est.ci_95 = {est.d, est.d};
    return est;
  }

  const Rng root(opts.seed);
  std::vector<double> draws(opts.replicates,
                            std::numeric_limits<double>::quiet_NaN());
  parallel_for(opts.replicates, opts.threads, [&](std::size_t r) {
    Rng rng = root.spawn(r);
    std::vector<double> ra(a.size()), rb(b.size());
    for (auto& x : ra) x = a[rng.next_below(a.size())];
    for (auto& x : rb) x = b[rng.next_below(b.size())];
    draws[r] = d_or_nan(ra, rb);
  });

  std::vector<double> kept;
  kept.reserve(draws.size());
  for (double d : draws) {
    if (std::isfinite(d)) kept.push_back(d);
  }
  if (kept.empty()) {
    est.ci_95 = {est.d, est.d};
    return est;
  }
  std::sort(kept.begin(), kept.end());
  double lo = quantile_sorted(kept, 0.025);
  double hi = quantile_sorted(kept, 0.975);
  // The interval must bracket the point estimate (type contract); percentile
  // intervals on tiny samples can undercut it by rounding.
  lo = std::min(lo, est.d);
  hi = std::max(hi, est.d);
  est.ci_95 = {lo, hi};
  return est;
}

}  // namespace ivq::stats
