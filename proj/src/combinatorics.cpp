#include "pathtree/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "pathtree/error.hpp"

namespace pathtree {

DegreeSequence::DegreeSequence(std::vector<double> degrees) : d_(std::move(degrees)) {
  for (const double d : d_) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::kRangeViolation, "expected degrees must be finite and nonnegative");
    }
    s_ += d;
    s2_ += d * d;
    d_max_ = std::max(d_max_, d);
  }
}

bool DegreeSequence::admissible() const noexcept {
  return d_max_ * d_max_ <= s_ * (1.0 + 1e-12);
}

double DegreeSequence::edge_probability(std::size_t i, std::size_t j) const {
  if (s_ <= 0.0) return 0.0;
  return std::min(1.0, d_[i] * d_[j] / s_);
}

EdgeClassification classify_edges(std::span<const std::uint64_t> nodes, bool directed) {
  if (nodes.size() < 2) {
    throw Error(ErrorCode::kPreconditionViolated, "walk needs at least one edge");
  }
  EdgeClassification c;
  const std::size_t r = nodes.size() - 1;
  c.tags.resize(r);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::size_t i = 0; i < r; ++i) {
    auto key = std::make_pair(nodes[i], nodes[i + 1]);
    if (!directed && key.first > key.second) std::swap(key.first, key.second);
    c.tags[i] = seen.insert(key).second ? EdgeClassification::Tag::kNew
                                        : EdgeClassification::Tag::kRepeating;
  }

  for (std::size_t i = 0; i < r;) {
    std::size_t j = i;
    while (j + 1 < r && c.tags[j + 1] == c.tags[i]) ++j;
    if (c.tags[i] == EdgeClassification::Tag::kNew) {
      c.new_blocks.push_back({i, j});
    } else {
      c.repeating_blocks.push_back({i, j});
      ++c.q[j - i + 1];
      // Edge i runs nodes[i] -> nodes[i+1]; the block spans nodes[i..j+1].
      const std::uint64_t first = nodes[i];
      const std::uint64_t last = nodes[j + 1];
      const bool seen_before =
          std::find(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(i), first) !=
          nodes.begin() + static_cast<std::ptrdiff_t>(i);
      (seen_before ? c.r1 : c.r2).push_back({first, last});
    }
    i = j + 1;
  }

  for (std::size_t m = 1; m < r; ++m) {
    if (c.tags[m - 1] == EdgeClassification::Tag::kNew && c.tags[m] == EdgeClassification::Tag::kNew) {
      c.interior.push_back(nodes[m]);
    }
  }
  return c;
}

double path_probability(std::span<const std::uint64_t> nodes, const DegreeSequence& seq) {
  const EdgeClassification c = classify_edges(nodes);
  if (!c.first_and_last_new()) {
    throw Error(ErrorCode::kPreconditionViolated, "first and last edges must be new edges");
  }
  for (const auto v : nodes) {
    if (v >= seq.size()) throw Error(ErrorCode::kRangeViolation, "walk node outside the sequence");
  }
  if (seq.sum() <= 0.0) return 0.0;
  const double log_s = std::log(seq.sum());
  auto log_d = [&](std::uint64_t v) { return std::log(seq[v]); };

  double log_p = log_d(nodes.front()) + log_d(nodes.back()) - log_s;
  for (const auto v : c.interior) log_p += 2.0 * log_d(v) - log_s;
  for (const auto& [j, k] : c.r1) log_p += log_d(j) + log_d(k) - log_s;
  for (const auto& [l, m] : c.r2) log_p += log_d(l) + log_d(m) - log_s;
  // exp(-inf) == 0 covers zero-degree nodes; the clamp absorbs rounding when
  // every factor is exactly 1 (hub-to-hub edges).
  return std::min(1.0, std::exp(log_p));
}

namespace {

void check_pair(const DegreeSequence& seq, std::size_t s, std::size_t t, int r) {
  if (s >= seq.size() || t >= seq.size()) throw Error(ErrorCode::kRangeViolation, "node outside the sequence");
  if (s == t) throw Error(ErrorCode::kPreconditionViolated, "s and t must differ");
  if (r < 1) throw Error(ErrorCode::kPreconditionViolated, "r must be at least 1");
  if (seq.sum() <= 0.0) throw Error(ErrorCode::kPreconditionViolated, "degree sum must be positive");
}

}  // namespace

BoundValue expected_sp_lower(const DegreeSequence& seq, std::size_t s, std::size_t t, int r) {
  check_pair(seq, s, t, r);
  const double p_st = seq[s] * seq[t] / seq.sum();
  const double ratio = seq.ratio();
  const double correction =
      1.0 - static_cast<double>(r) * (r + 1) * seq.p_max() / (2.0 * ratio);
  const double value = p_st * std::pow(ratio, r - 1) * correction;
  return {value, !(value > 0.0)};
}

double expected_nbp_upper(const DegreeSequence& seq, std::size_t s, std::size_t t, int r) {
  check_pair(seq, s, t, r);
  const double ratio = seq.ratio();
  if (!(seq.sum_squares() > seq.sum())) {
    throw Error(ErrorCode::kPreconditionViolated, "upper bound needs S2 > S");
  }
  if (!(2.0 * r < ratio)) {
    throw Error(ErrorCode::kPreconditionViolated, "upper bound needs 2r < S2/S");
  }
  const double p_st = seq[s] * seq[t] / seq.sum();
  const double x = 2.0 * r / ratio;  // 2r S / S2
  return p_st * std::pow(ratio, r - 1) / (1.0 - 1.0 / ratio) *
         std::exp(x * x * seq.p_max() / (1.0 - x));
}

namespace {

struct TupleSum {
  const DegreeSequence& seq;
  std::size_t target;
  int remaining_interior = 0;
  std::vector<char> used;
  double total = 0.0;

  void walk(std::size_t last, int placed, double weight) {
    if (placed == remaining_interior) {
      total += weight * seq.edge_probability(last, target);
      return;
    }
    for (std::size_t b = 0; b < seq.size(); ++b) {
      if (used[b]) continue;
      used[b] = 1;
      walk(b, placed + 1, weight * seq.edge_probability(last, b));
      used[b] = 0;
    }
  }
};

}  // namespace

double expected_sp_exact(const DegreeSequence& seq, std::size_t s, std::size_t t, int r,
                         std::uint64_t max_tuples) {
  check_pair(seq, s, t, r);
  // Tuples: ordered choices of r-1 distinct interior nodes from n-2.
  const std::size_t n = seq.size();
  if (static_cast<std::size_t>(r - 1) > n - 2) return 0.0;
  double tuples = 1.0;
  for (int k = 0; k < r - 1; ++k) tuples *= static_cast<double>(n - 2 - k);
  if (tuples > static_cast<double>(max_tuples)) {
    throw Error(ErrorCode::kGuardViolation,
                "exact expectation needs " + std::to_string(tuples) + " tuples");
  }
  TupleSum sum{seq, t, r - 1, std::vector<char>(n, 0), 0.0};
  sum.used[s] = 1;
  sum.used[t] = 1;
  sum.walk(s, 0, 1.0);
  return sum.total;
}

}  // namespace pathtree
