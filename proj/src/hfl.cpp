#include "mecsim/hfl.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mecsim/kernels.hpp"

namespace mecsim::hfl {
namespace {

bool all_finite(const ModelVector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Weighted mean of (vector, weight) pairs via accumulate-then-scale.
ModelVector weighted_mean(std::span<const ClientReport> reports) {
  const std::size_t dim = reports.front().model.size();
  ModelVector acc(dim, 0.0);
  std::int64_t total = 0;
  for (const auto& r : reports) {
    if (r.model.size() != dim) {
      throw HflError(HflError::Kind::DimensionMismatch,
                     "cluster_aggregate: models have different dimensions");
    }
    kernels::axpy(static_cast<double>(r.data_count), r.model, acc);
    total += r.data_count;
  }
  kernels::scale(1.0 / static_cast<double>(total), acc);
  return acc;
}

}  // namespace

ModelVector local_update(ModelVector w, const GradFn& grad, double eta, int steps) {
  if (!all_finite(w)) {
    throw HflError(HflError::Kind::NonFiniteGradient,
                   "local_update: non-finite starting point");
  }
  for (int k = 0; k < steps; ++k) {
    const ModelVector g = grad(w);
    if (g.size() != w.size() || !all_finite(g)) {
      throw HflError(HflError::Kind::NonFiniteGradient,
                     "local_update: non-finite or mis-sized gradient");
    }
    kernels::axpy(-eta, g, w);
    if (!all_finite(w)) {
      throw HflError(HflError::Kind::NonFiniteGradient,
                     "local_update: iterate diverged to non-finite values");
    }
  }
  return w;
}

ModelVector cluster_aggregate(std::span<const ClientReport> reports) {
  if (reports.empty()) {
    throw HflError(HflError::Kind::EmptyCluster, "cluster_aggregate: no reports");
  }
  return weighted_mean(reports);
}

int vote_protocol_version(std::span<const VersionChoice> choices) {
  if (choices.empty()) {
    throw HflError(HflError::Kind::EmptyChoices, "vote: no choices");
  }
  std::map<int, std::int64_t> totals;  // ordered: smaller version wins ties
  for (const auto& c : choices) {
    totals[c.version] += c.data_count;
  }
  int winner = 0;
  std::int64_t best = 0;
  for (const auto& [version, count] : totals) {
    if (count > best) {
      best = count;
      winner = version;
    }
  }
  if (best <= 0) {
    throw HflError(HflError::Kind::AllZeroWeights, "vote: all data counts are zero");
  }
  return winner;
}

ModelVector hierarchical_round(std::span<const Cluster> clusters, double eta,
                               int local_steps) {
  if (clusters.empty()) {
    throw HflError(HflError::Kind::EmptyCluster, "hierarchical_round: no clusters");
  }
  std::vector<ClientReport> cluster_models;
  cluster_models.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    if (cluster.empty()) {
      throw HflError(HflError::Kind::EmptyCluster, "hierarchical_round: empty cluster");
    }
    std::vector<ClientReport> reports;
    reports.reserve(cluster.size());
    std::int64_t cluster_total = 0;
    for (const auto& client : cluster) {
      reports.push_back(
          {local_update(client.model, client.grad, eta, local_steps), client.data_count});
      cluster_total += client.data_count;
    }
    cluster_models.push_back({cluster_aggregate(reports), cluster_total});
  }
  return cluster_aggregate(cluster_models);
}

}  // namespace mecsim::hfl
