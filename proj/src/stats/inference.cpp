#include "ivq/stats/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "ivq/error.hpp"
#include "ivq/stats/descriptive.hpp"

namespace ivq::stats {
namespace {

double variance(std::span<const double> xs, double m) {
  double ss = 0.0;
  for (double x : xs) {
    const double d = x - m;
    ss += d * d;
  }
  return ss / static_cast<double>(xs.size() - 1);
}

struct Ranked {
  std::vector<double> ranks;      // pooled mid-ranks, 1-based
  std::vector<std::size_t> ties;  // tie-group sizes > 1
};

Ranked midrank(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

  Ranked out;
  out.ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) out.ranks[order[k]] = rank;
    if (j > i) out.ties.push_back(j - i + 1);
    i = j + 1;
  }
  return out;
}

/// Null distribution of U for tie-free samples: counts[u] = number of the
/// C(n_a + n_b, n_a) rank assignments with statistic u, via the recurrence
/// f_{a,b}(u) = f_{a,b-1}(u) + f_{a-1,b}(u - b). Counts stay below 2^53
/// whenever n_a * n_b <= 400, so doubles hold them exactly.
std::vector<double> exact_u_counts(std::size_t n_a, std::size_t n_b) {
  const std::size_t max_u = n_a * n_b;
  std::vector<std::vector<double>> f(n_a + 1,
                                     std::vector<double>(max_u + 1, 0.0));
  for (std::size_t a = 0; a <= n_a; ++a) f[a][0] = 1.0;
  for (std::size_t b = 1; b <= n_b; ++b) {
    std::vector<std::vector<double>> g(n_a + 1,
                                       std::vector<double>(max_u + 1, 0.0));
    for (std::size_t a = 0; a <= n_a; ++a) {
      for (std::size_t u = 0; u <= a * b; ++u) {
        double v = f[a][u];
        if (a > 0 && u >= b) v += g[a - 1][u - b];
        g[a][u] = v;
      }
    }
    f = std::move(g);
  }
  return f[n_a];
}

}  // namespace

WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DataError("welch_t: each group needs at least 2 observations");
  }
  const double ma = mean(a), mb = mean(b);
  const double va = variance(a, ma), vb = variance(b, mb);
  if (va == 0.0 && vb == 0.0) {
    throw DataError("welch_t: both groups have zero variance");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double sa = va / na, sb = vb / nb;
  WelchResult r;
  r.t = (ma - mb) / std::sqrt(sa + sb);
  r.df = (sa + sb) * (sa + sb) /
         (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  const boost::math::students_t_distribution<double> dist(r.df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.p = std::min(r.p, 1.0);
  return r;
}

MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw DataError("mann_whitney_u: both groups must be non-empty");
  }
  const std::size_t n_a = a.size(), n_b = b.size();
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const Ranked ranked = midrank(pooled);

  double r_a = 0.0;
  for (std::size_t i = 0; i < n_a; ++i) r_a += ranked.ranks[i];
  const double prod = static_cast<double>(n_a) * static_cast<double>(n_b);
  const double u_a = r_a - static_cast<double>(n_a * (n_a + 1)) / 2.0;
  const double u_b = prod - u_a;
  const double u_max = std::max(u_a, u_b);

  MwuResult r;
  r.u = u_a;

  const bool tie_free = ranked.ties.empty();
  if (tie_free && n_a * n_b <= 400) {
    r.exact = true;
    const auto counts = exact_u_counts(n_a, n_b);
    double total = 0.0, tail = 0.0;
    const auto u_floor = static_cast<std::size_t>(std::llround(u_max));
    for (std::size_t u = 0; u < counts.size(); ++u) {
      total += counts[u];
      if (u >= u_floor) tail += counts[u];
    }
    r.p = std::min(1.0, 2.0 * tail / total);
  } else {
    r.exact = false;
    const double n = static_cast<double>(n_a + n_b);
    double tie_term = 0.0;
    for (std::size_t t : ranked.ties) {
      const double td = static_cast<double>(t);
      tie_term += td * td * td - td;
    }
    const double var =
        prod / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
      // Every pooled value identical: no evidence either way.
      r.p = 1.0;
      return r;
    }
    const double z = (u_max - prod / 2.0 - 0.5) / std::sqrt(var);
    const boost::math::normal_distribution<double> nd;
    r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(nd, z)));
  }
  return r;
}

double rank_biserial(double u, std::size_t n_a, std::size_t n_b) {
  return 1.0 - 2.0 * u / (static_cast<double>(n_a) * static_cast<double>(n_b));
}

}  // namespace ivq::stats
