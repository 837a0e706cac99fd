#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracknets/model.hpp"

namespace tracknets {

struct SpnOptions {
    /// Player ids left out of every graph (e.g. goalkeepers, by id).
    std::vector<std::string> exclude_players;
    /// When set, only players strictly closer than this to the ball are nodes.
    /// Frames without a ball fix yield no nodes (and are skipped by profiles).
    std::optional<double> ball_window_m;
    /// Profiles average over alive frames only unless this is set.
    bool include_dead_frames = false;
};

struct SignedEdge {
    PlayerIndex i = -1;  // i < j
    PlayerIndex j = -1;
    int sign = 0;  // +1 teammates, -1 opponents
};

/// One frame's proximity graph: players linked when closer than radius_m
/// (strict), signed by team identity.
struct SignedGraph {
    std::int64_t frame_index = 0;
    double radius_m = 0.0;
    std::vector<PlayerIndex> nodes;
    std::vector<int> node_team;  // parallel to nodes
    std::vector<Vec2> node_pos;  // parallel to nodes
    std::vector<SignedEdge> edges;
};

struct TriangleCounts {
    std::int64_t aaa = 0;  // three home players
    std::int64_t bbb = 0;  // three away players
    std::int64_t aab = 0;  // two home, one away
    std::int64_t abb = 0;  // one home, two away

    std::int64_t total() const { return aaa + bbb + aab + abb; }
    TriangleCounts& operator+=(const TriangleCounts& o);
    friend bool operator==(const TriangleCounts&, const TriangleCounts&) = default;
};

struct TriangleMeans {
    double aaa = 0, bbb = 0, aab = 0, abb = 0;
};

/// Per-frame average triangle census over a radius sweep.
struct TriangleProfile {
    std::vector<double> radii;           // strictly increasing
    std::vector<TriangleCounts> totals;  // summed over counted frames, per radius
    std::int64_t frame_count = 0;

    TriangleMeans mean(std::size_t radius_idx) const;
};

SignedGraph build_spn_frame(const Frame& frame, const MatchRecording& rec, double radius_m,
                            const SpnOptions& options = {});

/// Census of all 3-cliques classified by team composition.
TriangleCounts triangle_census(const SignedGraph& g);

/// Radius sweep averaged over the match; frames are independent, so the
/// sweep runs parallel over frames with exact integer accumulation.
TriangleProfile triangle_profile(const MatchRecording& rec, const std::vector<double>& radii,
                                 const SpnOptions& options = {});

struct EdgeBalance {
    std::int64_t home_positive = 0;
    std::int64_t away_positive = 0;
    std::int64_t negative = 0;
};

EdgeBalance edge_balance(const SignedGraph& g);

/// Plot-ready CSV: radius_m,aaa,bbb,aab,abb.
std::string profile_csv(const TriangleProfile& profile);

/// Export view: players at raw frame positions, node size = degree,
/// edge attribute sign.
WeightedGraph to_graph(const SignedGraph& g, const MatchRecording& rec);

}  // namespace tracknets
