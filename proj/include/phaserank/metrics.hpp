#pragma once

// Scoring predicted orderings against simulator ground truth.

#include <map>
#include <string>
#include <vector>

#include "phaserank/locate.hpp"
#include "phaserank/simulator.hpp"

namespace phaserank {

// Ground-truth rank of each drone along `axis`: descending coordinate order
// (sweeps fly in the positive direction, so the largest coordinate crosses
// the reader plane first). Ties break by drone id.
std::map<std::string, int> truth_ranks(const std::vector<DroneInfo>& drones, Axis axis);

// Fraction of unordered drone pairs with distinct true axis coordinates whose
// predicted relative order matches the true coordinate order (pairwise
// concordance = 1 - normalized Kendall distance). Pairs with a drone the
// pipeline failed to rank count as discordant; pairs with equal true
// coordinates are skipped. Throws UndefinedMetricError when no scorable pair
// exists.
double pairwise_accuracy(const AxisOrder& predicted, const std::vector<DroneInfo>& truth,
                         Axis axis);

// Fraction of drones whose full (rank_x, rank_y, rank_z) triple matches the
// ground-truth coordinate ranks. Truth ranks are evaluated over the drones
// the geometry actually ranked, so one failed drone costs exactly itself;
// drones missing from the geometry count as wrong. Denominator is the full
// swarm.
double geometry_accuracy(const SwarmGeometry& predicted, const std::vector<DroneInfo>& truth_x,
                         const std::vector<DroneInfo>& truth_y,
                         const std::vector<DroneInfo>& truth_z);

}  // namespace phaserank
