#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tracknets/grid.hpp"
#include "tracknets/model.hpp"

namespace tracknets {

enum class CrossingMode {
    Traversal,  // every frontier along the straight segment (4-neighbor steps)
    Endpoints   // one direct from-cell -> to-cell link per frame pair
};

/// Directed ball-movement network on grid cells for one team's possession.
/// Edge weights are frontier-crossing counts; dwell is stored as frame counts
/// so seconds stay an exact multiple of 1/fps.
struct BallFlowNetwork {
    int team = kHome;
    std::string team_id;
    GridSpec grid;
    CrossingMode mode = CrossingMode::Traversal;
    double fps = 25.0;
    std::map<std::pair<CellId, CellId>, std::int64_t> edge_weights;
    std::map<CellId, std::int64_t> dwell_frames;
    std::int64_t possession_frames = 0;

    double dwell_seconds(CellId c) const;
    double possession_seconds() const { return static_cast<double>(possession_frames) / fps; }
    std::int64_t total_crossings() const;
    std::int64_t total_dwell_frames() const;
};

/// Builds the network from consecutive frame pairs fully inside the team's
/// possession, with ball positions canonicalized to the team's attack
/// direction. Dwell accrues 1/fps for every possession frame with a ball fix.
BallFlowNetwork build_bfn(const MatchRecording& rec, const PhaseTimeline& timeline, int team,
                          const GridSpec& grid, CrossingMode mode = CrossingMode::Traversal);

/// Top-k edges by weight, ties broken by (src, dst) cell order.
std::vector<std::pair<std::pair<CellId, CellId>, std::int64_t>> top_corridors(
    const BallFlowNetwork& bfn, int k);

/// Export view: one node per grid cell at its center, sized by dwell seconds.
WeightedGraph to_graph(const BallFlowNetwork& bfn, PhaseSource phase_source);

std::string cell_node_id(CellId c);

}  // namespace tracknets
