#include "tracknets/ballflow.hpp"

#include <algorithm>

namespace tracknets {

double BallFlowNetwork::dwell_seconds(CellId c) const {
    auto it = dwell_frames.find(c);
    return it == dwell_frames.end() ? 0.0 : static_cast<double>(it->second) / fps;
}

std::int64_t BallFlowNetwork::total_crossings() const {
    std::int64_t n = 0;
    for (const auto& [edge, w] : edge_weights) n += w;
    return n;
}

std::int64_t BallFlowNetwork::total_dwell_frames() const {
    std::int64_t n = 0;
    for (const auto& [cell, f] : dwell_frames) n += f;
    return n;
}

BallFlowNetwork build_bfn(const MatchRecording& rec, const PhaseTimeline& timeline, int team,
                          const GridSpec& grid, CrossingMode mode) {
    if (team != kHome && team != kAway) throw DataError("invalid team index");
    if (timeline.labels.size() != rec.frames.size())
        throw DataError("timeline length does not match frame count");
    grid.validate();

    BallFlowNetwork bfn;
    bfn.team = team;
    bfn.team_id = rec.sheet(team).team_id;
    bfn.grid = grid;
    bfn.mode = mode;
    bfn.fps = rec.fps;
    const Phase phase = possession_phase(team);
    bfn.possession_frames = timeline.count(phase);

    const std::size_t n = rec.frames.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Frame& f = rec.frames[i];
        if (timeline.labels[i] != phase || !f.ball) continue;
        const Vec2 cb = canonical_position(*f.ball, team, f.period, rec);
        ++bfn.dwell_frames[cell_index(cb, grid)];

        if (i + 1 >= n) continue;
        const Frame& g = rec.frames[i + 1];
        if (timeline.labels[i + 1] != phase || !g.ball) continue;
        const Vec2 ca = cb;
        const Vec2 cc = canonical_position(*g.ball, team, g.period, rec);
        if (mode == CrossingMode::Traversal) {
            for (const Crossing& cr : segment_crossings(ca, cc, grid))
                ++bfn.edge_weights[{cr.from, cr.to}];
        } else {
            const CellId c0 = cell_index(ca, grid);
            const CellId c1 = cell_index(cc, grid);
            if (c0 != c1) ++bfn.edge_weights[{c0, c1}];
        }
    }
    return bfn;
}

std::vector<std::pair<std::pair<CellId, CellId>, std::int64_t>> top_corridors(
    const BallFlowNetwork& bfn, int k) {
    if (k < 0) throw DataError("k must be >= 0");
    std::vector<std::pair<std::pair<CellId, CellId>, std::int64_t>> out(bfn.edge_weights.begin(),
                                                                        bfn.edge_weights.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.size() > static_cast<std::size_t>(k)) out.resize(k);
    return out;
}

std::string cell_node_id(CellId c) {
    return "c" + std::to_string(c.col) + "r" + std::to_string(c.row);
}

WeightedGraph to_graph(const BallFlowNetwork& bfn, PhaseSource phase_source) {
    WeightedGraph g;
    g.directed = true;
    g.signed_edges = false;
    for (int col = 0; col < bfn.grid.n_cols; ++col) {
        for (int row = 0; row < bfn.grid.n_rows; ++row) {
            const CellId c{col, row};
            g.nodes.push_back({cell_node_id(c), cell_center(c, bfn.grid), bfn.dwell_seconds(c),
                               cell_node_id(c)});
        }
    }
    for (const auto& [edge, w] : bfn.edge_weights)
        g.edges.push_back({cell_node_id(edge.first), cell_node_id(edge.second),
                           static_cast<double>(w), std::nullopt, std::nullopt});
    g.metadata["network"] = "ball_flow";
    g.metadata["team"] = bfn.team_id;
    g.metadata["grid"] = std::to_string(bfn.grid.n_cols) + "x" + std::to_string(bfn.grid.n_rows);
    g.metadata["crossing_mode"] = bfn.mode == CrossingMode::Traversal ? "traversal" : "endpoints";
    g.metadata["coordinates"] = "canonical";
    g.metadata["fps"] = std::to_string(bfn.fps);
    g.metadata["possession_frames"] = std::to_string(bfn.possession_frames);
    g.metadata["phase_source"] = std::string(phase_source_name(phase_source));
    return g;
}

}  // namespace tracknets
