#include "pathtree/random_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pathtree/error.hpp"

namespace pathtree {

namespace {

// Number of failures before the next success of a Bernoulli(p) sequence.
std::uint64_t geometric_skip(Rng& rng, double p) {
  if (p >= 1.0) return 0;
  const double skip = std::floor(std::log(rng.uniform_open_zero()) / std::log1p(-p));
  return skip > 1e18 ? static_cast<std::uint64_t>(1e18) : static_cast<std::uint64_t>(skip);
}

}  // namespace

Graph sample_chung_lu(const DegreeSequence& seq, RngSeed seed) {
  if (!seq.admissible()) {
    throw Error(ErrorCode::kInadmissibleSequence, "Chung-Lu model needs max d_i^2 <= S");
  }
  const std::size_t n = seq.size();
  std::vector<EdgeRecord> edges;
  Rng rng(seed);
  if (seq.sum() <= 0.0) return Graph::build(edges, false, n);
  const double s = seq.sum();

  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(seq.edge_probability(i, i))) edges.push_back({i, i, 1.0});
  }

  if (n <= kDensePairSamplingLimit) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.bernoulli(seq.edge_probability(i, j))) edges.push_back({i, j, 1.0});
      }
    }
  } else {
    // Skipping over nodes sorted by decreasing weight: along a row the pair
    // probability only falls, so skip with the current bound and thin by the
    // true probability.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return seq[a] > seq[b]; });
    for (std::size_t u = 0; u + 1 < n; ++u) {
      const double wu = seq[order[u]];
      std::size_t v = u + 1;
      double p = std::min(1.0, wu * seq[order[v]] / s);
      while (v < n && p > 0.0) {
        if (p < 1.0) v += geometric_skip(rng, p);
        if (v >= n) break;
        const double q = std::min(1.0, wu * seq[order[v]] / s);
        if (rng.uniform() < q / p) {
          const std::size_t a = std::min(order[u], order[v]);
          const std::size_t b = std::max(order[u], order[v]);
          edges.push_back({a, b, 1.0});
        }
        p = q;
        ++v;
      }
    }
  }
  return Graph::build(edges, false, n);
}

Graph sample_erdos_renyi(std::size_t n, double avg_degree, RngSeed seed) {
  const double max_avg = n > 0 ? static_cast<double>(n - 1) : 0.0;
  if (!(avg_degree >= 0.0) || avg_degree > max_avg) {
    throw Error(ErrorCode::kRangeViolation, "average degree must lie in [0, n-1]");
  }
  std::vector<EdgeRecord> edges;
  if (n < 2 || avg_degree == 0.0) return Graph::build(edges, false, n);
  const double p = avg_degree / max_avg;
  Rng rng(seed);
  if (n <= kDensePairSamplingLimit || p >= 1.0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (p >= 1.0 || rng.bernoulli(p)) edges.push_back({i, j, 1.0});
      }
    }
  } else {
    // Walk the lower triangle (v > w) in row-major order with geometric skips.
    std::uint64_t v = 1;
    std::uint64_t w = 0;
    w = geometric_skip(rng, p);
    for (;;) {
      while (w >= v && v < n) {
        w -= v;
        ++v;
      }
      if (v >= n) break;
      edges.push_back({w, v, 1.0});
      w += 1 + geometric_skip(rng, p);
    }
  }
  return Graph::build(edges, false, n);
}

namespace {

struct McmcShape {
  double total = 0.0;  // S
  double hub = 0.0;    // sqrt(S)
  double base = 0.0;   // uniform non-hub degree
  std::size_t free = 0;
};

McmcShape shape_of(const McmcConfig& cfg) {
  if (cfg.n == 0 || !(cfg.target_avg > 0.0) || !(cfg.tolerance > 0.0) ||
      cfg.hub_count >= cfg.n || !(cfg.min_degree >= 0.0)) {
    throw Error(ErrorCode::kInfeasibleConfig, "invalid MCMC configuration");
  }
  McmcShape shape;
  shape.total = static_cast<double>(cfg.n) * cfg.target_avg;
  shape.hub = std::sqrt(shape.total);
  shape.free = cfg.n - cfg.hub_count;
  const double hub_mass = static_cast<double>(cfg.hub_count) * shape.hub;
  if (hub_mass > shape.total) {
    throw Error(ErrorCode::kInfeasibleConfig, "hubs exceed the total degree mass");
  }
  shape.base = (shape.total - hub_mass) / static_cast<double>(shape.free);
  if (shape.base < cfg.min_degree || shape.base > shape.hub) {
    throw Error(ErrorCode::kInfeasibleConfig, "non-hub mass cannot respect the degree limits");
  }
  return shape;
}

}  // namespace

double mcmc_min_ratio(const McmcConfig& cfg) {
  const McmcShape sh = shape_of(cfg);
  const double s2 = static_cast<double>(cfg.hub_count) * sh.total +
                    static_cast<double>(sh.free) * sh.base * sh.base;
  return s2 / sh.total;
}

double mcmc_max_ratio(const McmcConfig& cfg) {
  const McmcShape sh = shape_of(cfg);
  // Pack non-hub mass at sqrt(S) above a floor of min_degree.
  double spare = (sh.base - cfg.min_degree) * static_cast<double>(sh.free);
  const double lift = sh.hub - cfg.min_degree;
  double s2 = static_cast<double>(cfg.hub_count) * sh.total;
  std::size_t remaining = sh.free;
  while (remaining > 0 && spare > 0.0) {
    const double add = std::min(lift, spare);
    s2 += (cfg.min_degree + add) * (cfg.min_degree + add);
    spare -= add;
    --remaining;
  }
  s2 += static_cast<double>(remaining) * cfg.min_degree * cfg.min_degree;
  return s2 / sh.total;
}

bool satisfies(const McmcConfig& cfg, const DegreeSequence& seq) {
  const double total = static_cast<double>(cfg.n) * cfg.target_avg;
  const double hub = std::sqrt(total);
  if (seq.size() != cfg.n) return false;
  if (std::abs(seq.sum() - total) > 1e-6 * total) return false;
  for (std::size_t i = 0; i < cfg.hub_count; ++i) {
    if (std::abs(seq[i] - hub) > 1e-9 * hub) return false;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < cfg.min_degree - 1e-9) return false;
  }
  if (!seq.admissible()) return false;
  return std::abs(seq.ratio() - cfg.target_ratio) <= cfg.tolerance * cfg.target_ratio;
}

DegreeSequence mcmc_degree_sequence(const McmcConfig& cfg, RngSeed seed) {
  const McmcShape sh = shape_of(cfg);
  const double lo = mcmc_min_ratio(cfg);
  const double hi = mcmc_max_ratio(cfg);
  const double slack = cfg.tolerance * cfg.target_ratio;
  if (cfg.target_ratio + slack < lo || cfg.target_ratio - slack > hi) {
    throw Error(ErrorCode::kTargetUnreachable, "target S2/S outside the reachable range [" +
                                                   std::to_string(lo) + ", " +
                                                   std::to_string(hi) + "]");
  }

  std::vector<double> d(cfg.n, sh.base);
  for (std::size_t i = 0; i < cfg.hub_count; ++i) d[i] = sh.hub;
  auto sum_squares = [&] {
    double acc = 0.0;
    for (const double x : d) acc += x * x;
    return acc;
  };
  double s2 = sum_squares();
  auto gap = [&](double value) { return std::abs(value / sh.total - cfg.target_ratio); };

  Rng rng(seed);
  constexpr std::uint64_t kStallLimit = 200'000;
  std::uint64_t stalled = 0;
  for (std::uint64_t iter = 0; iter < cfg.max_iters; ++iter) {
    if (gap(s2) <= slack) {
      DegreeSequence out(d);
      if (satisfies(cfg, out)) return out;
      s2 = sum_squares();  // drift; re-evaluate exactly
      if (gap(s2) <= slack) break;
    }
    if (sh.free < 2) break;
    const std::size_t i = cfg.hub_count + rng.below(sh.free);
    const std::size_t j = cfg.hub_count + rng.below(sh.free);
    if (i == j || d[i] <= cfg.min_degree) continue;
    double delta = rng.uniform_open_zero() * (d[i] - cfg.min_degree);
    delta = std::min(delta, sh.hub - d[j]);
    if (!(delta > 0.0)) continue;
    const double di = d[i] - delta;
    const double dj = d[j] + delta;
    const double next = s2 - d[i] * d[i] - d[j] * d[j] + di * di + dj * dj;
    if (gap(next) < gap(s2)) {
      d[i] = di;
      d[j] = dj;
      s2 = next;
      stalled = 0;
    } else if (++stalled >= kStallLimit) {
      std::fill(d.begin() + static_cast<std::ptrdiff_t>(cfg.hub_count), d.end(), sh.base);
      s2 = sum_squares();
      stalled = 0;
    }
  }
  DegreeSequence out(d);
  if (satisfies(cfg, out)) return out;
  throw Error(ErrorCode::kTargetUnreachable, "MCMC did not reach the target S2/S");
}

}  // namespace pathtree
