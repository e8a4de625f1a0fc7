#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mecsim::hfl {

// Two-level federated aggregation: clients take gradient steps on local
// data, clusters combine client models weighted by data counts, and the
// global model combines cluster models weighted by cluster totals.

using ModelVector = std::vector<double>;
using GradFn = std::function<ModelVector(const ModelVector&)>;

struct ClientReport {
  ModelVector model;
  std::int64_t data_count = 1;
};

struct VersionChoice {
  std::string device;
  int version = 1;
  std::int64_t data_count = 0;
};

struct Client {
  ModelVector model;
  std::int64_t data_count = 1;
  GradFn grad;
};

using Cluster = std::vector<Client>;

class HflError : public std::runtime_error {
 public:
  enum class Kind {
    EmptyCluster,
    DimensionMismatch,
    EmptyChoices,
    AllZeroWeights,
    NonFiniteGradient,
  };

  HflError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// `steps` iterations of w <- w - eta * grad(w). steps = 0 returns w
// unchanged. Throws HflError{NonFiniteGradient} if any gradient or iterate
// goes non-finite.
ModelVector local_update(ModelVector w, const GradFn& grad, double eta, int steps);

// Componentwise weighted mean with weights data_count / total. The result is
// a convex combination of the inputs. Throws EmptyCluster / DimensionMismatch.
ModelVector cluster_aggregate(std::span<const ClientReport> reports);

// Data-weighted plurality; ties break toward the smaller version number.
// Throws EmptyChoices / AllZeroWeights.
int vote_protocol_version(std::span<const VersionChoice> choices);

// local_update on every client, cluster_aggregate per cluster, then a final
// aggregation of cluster models weighted by per-cluster data totals.
ModelVector hierarchical_round(std::span<const Cluster> clusters, double eta,
                               int local_steps);

}  // namespace mecsim::hfl
