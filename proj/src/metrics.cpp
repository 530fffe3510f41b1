#include "phaserank/metrics.hpp"

#include <algorithm>

#include "phaserank/errors.hpp"

namespace phaserank {

std::map<std::string, int> truth_ranks(const std::vector<DroneInfo>& drones, Axis axis) {
    std::vector<const DroneInfo*> order;
    order.reserve(drones.size());
    for (const DroneInfo& d : drones) order.push_back(&d);
    std::sort(order.begin(), order.end(), [axis](const DroneInfo* a, const DroneInfo* b) {
        const double ca = component(a->start, axis);
        const double cb = component(b->start, axis);
        if (ca != cb) return ca > cb;  // largest coordinate crosses first
        return a->drone_id < b->drone_id;
    });
    std::map<std::string, int> ranks;
    for (std::size_t i = 0; i < order.size(); ++i) {
        ranks[order[i]->drone_id] = static_cast<int>(i);
    }
    return ranks;
}

double pairwise_accuracy(const AxisOrder& predicted, const std::vector<DroneInfo>& truth,
                         Axis axis) {
    if (truth.size() < 2) {
        throw UndefinedMetricError("pairwise_accuracy: need at least two drones");
    }
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < predicted.ranking.size(); ++i) {
        position[predicted.ranking[i]] = i;
    }

    std::size_t considered = 0;
    std::size_t concordant = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        for (std::size_t j = i + 1; j < truth.size(); ++j) {
            const double ci = component(truth[i].start, axis);
            const double cj = component(truth[j].start, axis);
            if (ci == cj) continue;  // no ground-truth order for this pair
            ++considered;
            const auto pi = position.find(truth[i].drone_id);
            const auto pj = position.find(truth[j].drone_id);
            if (pi == position.end() || pj == position.end()) continue;  // failed -> discordant
            const bool predicted_i_first = pi->second < pj->second;
            const bool truth_i_first = ci > cj;
            if (predicted_i_first == truth_i_first) ++concordant;
        }
    }
    if (considered == 0) {
        throw UndefinedMetricError("pairwise_accuracy: no pair has distinct coordinates");
    }
    return static_cast<double>(concordant) / static_cast<double>(considered);
}

double geometry_accuracy(const SwarmGeometry& predicted, const std::vector<DroneInfo>& truth_x,
                         const std::vector<DroneInfo>& truth_y,
                         const std::vector<DroneInfo>& truth_z) {
    const std::size_t n = truth_x.size();
    if (n == 0 || truth_y.size() != n || truth_z.size() != n) {
        throw UndefinedMetricError("geometry_accuracy: inconsistent or empty truth");
    }
    for (const DroneInfo& d : truth_x) {
        const auto has = [&](const std::vector<DroneInfo>& v) {
            for (const DroneInfo& e : v) {
                if (e.drone_id == d.drone_id) return true;
            }
            return false;
        };
        if (!has(truth_y) || !has(truth_z)) {
            throw UndefinedMetricError("geometry_accuracy: truth drone sets differ");
        }
    }

    // Truth ranks over the drones the geometry ranked, matching the re-indexed
    // predicted ranks: a failed drone costs itself, not its neighbours.
    const std::vector<DroneInfo>* truths[3] = {&truth_x, &truth_y, &truth_z};
    std::map<std::string, int> truth_by_axis[3];
    for (int a = 0; a < 3; ++a) {
        std::vector<DroneInfo> subset;
        for (const DroneInfo& d : *truths[a]) {
            if (predicted.ranks.count(d.drone_id)) subset.push_back(d);
        }
        truth_by_axis[a] = truth_ranks(subset, static_cast<Axis>(a));
    }

    std::size_t correct = 0;
    for (const DroneInfo& d : truth_x) {
        const auto it = predicted.ranks.find(d.drone_id);
        if (it == predicted.ranks.end()) continue;  // unranked -> wrong
        bool all_match = true;
        for (int a = 0; a < 3; ++a) {
            if (it->second[a] != truth_by_axis[a].at(d.drone_id)) {
                all_match = false;
                break;
            }
        }
        if (all_match) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

}  // namespace phaserank
