#include <deque>

#include "simclust/error.hpp"
#include "simclust/netcluster.hpp"

namespace simclust {

namespace {

constexpr ClusterId kUnassigned = -100;

}  // namespace

std::vector<ClusterId> modified_dbscan(const Adjacency& adjacency, std::size_t min_pts) {
    if (min_pts < 1) throw ValidationError("modified_dbscan: min_pts must be >= 1");
    const std::size_t n = adjacency.size();
    std::vector<ClusterId> label(n, kUnassigned);
    // assigned to a cluster or waiting in the current expansion queue
    std::vector<char> visited(n, 0);

    auto unvisited_neighbours = [&](std::size_t node) {
        std::size_t count = 0;
        for (auto nb : adjacency[node])
            if (!visited[nb]) ++count;
        return count;
    };

    ClusterId next_id = 0;
    std::deque<std::uint32_t> queue;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (label[seed] != kUnassigned) continue;
        if (unvisited_neighbours(seed) < min_pts) continue;

        const ClusterId cluster = next_id++;
        label[seed] = cluster;
        visited[seed] = 1;
        auto enqueue_neighbours = [&](std::size_t node) {
            for (auto nb : adjacency[node]) {
                if (visited[nb]) continue;
                visited[nb] = 1;
                label[nb] = cluster;
                queue.push_back(nb);
            }
        };
        enqueue_neighbours(seed);
        while (!queue.empty()) {
            const auto node = queue.front();
            queue.pop_front();
            if (unvisited_neighbours(node) >= min_pts) enqueue_neighbours(node);
        }
    }
    for (auto& l : label)
        if (l == kUnassigned) l = kNoise;
    return label;
}

}  // namespace simclust
