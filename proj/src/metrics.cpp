#include "glfs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "glfs/error.hpp"
#include "glfs/kernels/kernels.hpp"

namespace glfs {

namespace {

std::vector<Index> descending_order(const Vector& weights) {
  std::vector<Index> order(static_cast<std::size_t>(weights.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return weights[a] > weights[b]; });
  return order;
}

std::vector<int> dense_ids(const std::vector<int>& labels, int& count) {
  std::map<int, int> ids;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int v : labels) {
    auto [it, inserted] = ids.emplace(v, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  count = static_cast<int>(ids.size());
  return out;
}

}  // namespace

std::vector<Index> descending_ranks(const Vector& weights) {
  const std::vector<Index> order = descending_order(weights);
  std::vector<Index> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[static_cast<std::size_t>(order[r])] = static_cast<Index>(r) + 1;
  }
  return rank;
}

std::vector<Index> top_k_features(const Vector& weights, Index k) {
  require(k >= 0 && k <= weights.size(), ErrorCode::InvalidParameter,
          "cannot take more features than exist");
  std::vector<Index> order = descending_order(weights);
  order.resize(static_cast<std::size_t>(k));
  return order;
}

double ranking_score(const Vector& weights, const std::vector<Index>& true_ids) {
  require(weights.size() >= 4, ErrorCode::InvalidInput, "Score needs at least four features");
  require(true_ids.size() == 4, ErrorCode::InvalidInput, "Score needs exactly four true features");
  const std::vector<Index> rank = descending_ranks(weights);
  double sum = 0.0;
  for (Index id : true_ids) {
    require(id >= 0 && id < weights.size(), ErrorCode::InvalidInput, "true feature id out of range");
    const Index r = rank[static_cast<std::size_t>(id)];
    sum += 1.0 / static_cast<double>(std::max<Index>(4, r) - 3);
  }
  return sum / 4.0;
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
  require(a.size() == b.size(), ErrorCode::InvalidInput, "label vectors differ in length");
  require(!a.empty(), ErrorCode::InvalidInput, "label vectors are empty");
  int ka = 0;
  int kb = 0;
  const std::vector<int> da = dense_ids(a, ka);
  const std::vector<int> db = dense_ids(b, kb);
  const auto n = static_cast<double>(a.size());

  std::vector<double> joint(static_cast<std::size_t>(ka * kb), 0.0);
  std::vector<double> pa(static_cast<std::size_t>(ka), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(kb), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[static_cast<std::size_t>(da[i] * kb + db[i])] += 1.0;
    pa[static_cast<std::size_t>(da[i])] += 1.0;
    pb[static_cast<std::size_t>(db[i])] += 1.0;
  }
  auto entropy = [n](const std::vector<double>& counts) {
    double h = 0.0;
    for (double c : counts) {
      if (c > 0.0) h -= (c / n) * std::log(c / n);
    }
    return h;
  };
  const double ha = entropy(pa);
  const double hb = entropy(pb);
  if (ka == 1 && kb == 1) return 1.0;
  if (ka == 1 || kb == 1) return 0.0;

  double mi = 0.0;
  for (int i = 0; i < ka; ++i) {
    for (int j = 0; j < kb; ++j) {
      const double c = joint[static_cast<std::size_t>(i * kb + j)];
      if (c > 0.0) {
        mi += (c / n) * std::log(c * n / (pa[static_cast<std::size_t>(i)] *
                                          pb[static_cast<std::size_t>(j)]));
      }
    }
  }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

double loo_1nn_accuracy(const Matrix& x, const std::vector<int>& labels) {
  const Index n = x.cols();
  require(n >= 2, ErrorCode::InvalidInput, "leave-one-out needs at least two samples");
  require(static_cast<Index>(labels.size()) == n, ErrorCode::InvalidInput,
          "label count does not match the sample count");
  const auto d = static_cast<std::size_t>(x.rows());
  Index hits = 0;
  for (Index i = 0; i < n; ++i) {
    Index nearest = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dist =
          kernels::squared_distance({x.col(i).data(), d}, {x.col(j).data(), d});
      if (dist < best) {
        best = dist;
        nearest = j;
      }
    }
    if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(nearest)]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size() && a.size() >= 2, ErrorCode::InvalidInput,
          "spearman needs two equal-length samples of size >= 2");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t s = 0; s < order.size();) {
      std::size_t e = s;
      while (e + 1 < order.size() && v[order[e + 1]] == v[order[s]]) ++e;
      const double avg = 0.5 * static_cast<double>(s + e) + 1.0;
      for (std::size_t t = s; t <= e; ++t) r[order[t]] = avg;
      s = e + 1;
    }
    return r;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace glfs
