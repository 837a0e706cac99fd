#include "tracknets/proximity.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdio>

namespace tracknets {

TriangleCounts& TriangleCounts::operator+=(const TriangleCounts& o) {
    aaa += o.aaa;
    bbb += o.bbb;
    aab += o.aab;
    abb += o.abb;
    return *this;
}

TriangleMeans TriangleProfile::mean(std::size_t radius_idx) const {
    const TriangleCounts& t = totals.at(radius_idx);
    if (frame_count == 0) return {};
    const double n = static_cast<double>(frame_count);
    return {t.aaa / n, t.bbb / n, t.aab / n, t.abb / n};
}

namespace {

constexpr std::size_t kMaxNodes = 64;  // adjacency fits one mask

struct FrameNodes {
    std::vector<PlayerIndex> player;
    std::vector<int> team;
    std::vector<Vec2> pos;

    std::size_t size() const { return player.size(); }
};

std::vector<char> resolve_exclusions(const MatchRecording& rec, const SpnOptions& options) {
    std::vector<char> excluded(rec.player_count(), 0);
    for (const std::string& id : options.exclude_players) {
        const auto idx = rec.find_player(id);
        if (!idx) throw DataError("exclude_players references unknown player id: " + id);
        excluded[*idx] = 1;
    }
    return excluded;
}

FrameNodes gather_nodes(const Frame& frame, const MatchRecording& rec,
                        const std::vector<char>& excluded, const SpnOptions& options) {
    FrameNodes nodes;
    const bool windowed = options.ball_window_m.has_value();
    if (windowed && !frame.ball) return nodes;
    const double w2 = windowed ? *options.ball_window_m * *options.ball_window_m : 0.0;
    for (const PlayerPos& pp : frame.players) {
        if (excluded[pp.player]) continue;
        if (windowed && !(dist2(pp.pos, *frame.ball) < w2)) continue;
        nodes.player.push_back(pp.player);
        nodes.team.push_back(rec.team_of(pp.player));
        nodes.pos.push_back(pp.pos);
    }
    if (nodes.size() > kMaxNodes) throw DataError("too many on-pitch players for census");
    return nodes;
}

// Census over adjacency bitmasks; each triangle counted once via i<j<k.
TriangleCounts census_masks(const std::vector<std::uint64_t>& adj, const std::vector<int>& team) {
    TriangleCounts counts;
    const std::size_t n = adj.size();
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            if (!(adj[i] >> j & 1)) continue;
            std::uint64_t common = adj[i] & adj[j] & ~((std::uint64_t{2} << j) - 1);
            const int base_home = (team[i] == kHome) + (team[j] == kHome);
            while (common) {
                const int k = std::countr_zero(common);
                common &= common - 1;
                switch (base_home + (team[k] == kHome)) {
                    case 3: ++counts.aaa; break;
                    case 2: ++counts.aab; break;
                    case 1: ++counts.abb; break;
                    default: ++counts.bbb; break;
                }
            }
        }
    }
    return counts;
}

std::vector<std::uint64_t> adjacency_for_radius(const FrameNodes& nodes, double radius_m) {
    const std::size_t n = nodes.size();
    const double r2 = radius_m * radius_m;
    std::vector<std::uint64_t> adj(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist2(nodes.pos[i], nodes.pos[j]) < r2) {
                adj[i] |= std::uint64_t{1} << j;
                adj[j] |= std::uint64_t{1} << i;
            }
        }
    }
    return adj;
}

bool profile_frame_eligible(const Frame& frame, const SpnOptions& options) {
    if (!options.include_dead_frames && !frame.ball_alive) return false;
    if (options.ball_window_m && !frame.ball) return false;
    return true;
}

}  // namespace

SignedGraph build_spn_frame(const Frame& frame, const MatchRecording& rec, double radius_m,
                            const SpnOptions& options) {
    if (radius_m < 0) throw DataError("radius_m must be >= 0");
    const auto excluded = resolve_exclusions(rec, options);
    const FrameNodes nodes = gather_nodes(frame, rec, excluded, options);

    SignedGraph g;
    g.frame_index = frame.frame_index;
    g.radius_m = radius_m;
    g.nodes = nodes.player;
    g.node_team = nodes.team;
    g.node_pos = nodes.pos;
    const double r2 = radius_m * radius_m;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (dist2(nodes.pos[i], nodes.pos[j]) < r2)
                g.edges.push_back({nodes.player[i], nodes.player[j],
                                   nodes.team[i] == nodes.team[j] ? +1 : -1});
    return g;
}

TriangleCounts triangle_census(const SignedGraph& g) {
    const std::size_t n = g.nodes.size();
    if (n > kMaxNodes) throw DataError("too many nodes for census");
    std::vector<std::uint64_t> adj(n, 0);
    std::vector<int> local(g.nodes.empty() ? 0 : 0);
    // map player -> local position
    std::vector<std::pair<PlayerIndex, std::size_t>> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i) order.emplace_back(g.nodes[i], i);
    std::sort(order.begin(), order.end());
    auto local_of = [&](PlayerIndex p) {
        auto it = std::lower_bound(order.begin(), order.end(), std::make_pair(p, std::size_t{0}));
        if (it == order.end() || it->first != p) throw DataError("edge references unknown node");
        return it->second;
    };
    for (const SignedEdge& e : g.edges) {
        const std::size_t a = local_of(e.i);
        const std::size_t b = local_of(e.j);
        adj[a] |= std::uint64_t{1} << b;
        adj[b] |= std::uint64_t{1} << a;
    }
    return census_masks(adj, g.node_team);
}

TriangleProfile triangle_profile(const MatchRecording& rec, const std::vector<double>& radii,
                                 const SpnOptions& options) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 0) throw DataError("radii must be >= 0");
        if (i > 0 && radii[i] <= radii[i - 1]) throw DataError("radii must be strictly increasing");
    }
    TriangleProfile profile;
    profile.radii = radii;
    profile.totals.assign(radii.size(), TriangleCounts{});
    if (radii.empty()) return profile;

    const auto excluded = resolve_exclusions(rec, options);
    const std::int64_t n_frames = static_cast<std::int64_t>(rec.frames.size());
    const int n_threads = omp_get_max_threads();
    std::vector<std::vector<TriangleCounts>> acc(
        n_threads, std::vector<TriangleCounts>(radii.size()));
    std::vector<std::int64_t> counted(n_threads, 0);

#pragma omp parallel for schedule(static)
    for (std::int64_t fi = 0; fi < n_frames; ++fi) {
        const Frame& frame = rec.frames[fi];
        if (!profile_frame_eligible(frame, options)) continue;
        const int tid = omp_get_thread_num();
        ++counted[tid];
        const FrameNodes nodes = gather_nodes(frame, rec, excluded, options);
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            const auto adj = adjacency_for_radius(nodes, radii[ri]);
            acc[tid][ri] += census_masks(adj, nodes.team);
        }
    }

    for (int t = 0; t < n_threads; ++t) {
        profile.frame_count += counted[t];
        for (std::size_t ri = 0; ri < radii.size(); ++ri) profile.totals[ri] += acc[t][ri];
    }
    return profile;
}

EdgeBalance edge_balance(const SignedGraph& g) {
    EdgeBalance balance;
    std::vector<std::pair<PlayerIndex, int>> team_of(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) team_of[i] = {g.nodes[i], g.node_team[i]};
    std::sort(team_of.begin(), team_of.end());
    auto lookup = [&](PlayerIndex p) {
        auto it = std::lower_bound(team_of.begin(), team_of.end(), std::make_pair(p, 0));
        if (it == team_of.end() || it->first != p) throw DataError("edge references unknown node");
        return it->second;
    };
    for (const SignedEdge& e : g.edges) {
        if (e.sign < 0)
            ++balance.negative;
        else if (lookup(e.i) == kHome)
            ++balance.home_positive;
        else
            ++balance.away_positive;
    }
    return balance;
}

std::string profile_csv(const TriangleProfile& profile) {
    std::string out = "radius_m,aaa,bbb,aab,abb\n";
    char buf[160];
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        const TriangleMeans m = profile.mean(i);
        std::snprintf(buf, sizeof(buf), "%g,%.6f,%.6f,%.6f,%.6f\n", profile.radii[i], m.aaa, m.bbb,
                      m.aab, m.abb);
        out += buf;
    }
    return out;
}

WeightedGraph to_graph(const SignedGraph& g, const MatchRecording& rec) {
    WeightedGraph out;
    out.directed = false;
    out.signed_edges = true;
    std::vector<std::pair<PlayerIndex, std::size_t>> degree_index;
    std::vector<int> degree(g.nodes.size(), 0);
    std::vector<std::pair<PlayerIndex, std::size_t>> order;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) order.emplace_back(g.nodes[i], i);
    std::sort(order.begin(), order.end());
    auto local_of = [&](PlayerIndex p) {
        auto it = std::lower_bound(order.begin(), order.end(), std::make_pair(p, std::size_t{0}));
        return it->second;
    };
    for (const SignedEdge& e : g.edges) {
        ++degree[local_of(e.i)];
        ++degree[local_of(e.j)];
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        out.nodes.push_back({rec.player_id(g.nodes[i]), g.node_pos[i],
                             static_cast<double>(degree[i]), rec.player_id(g.nodes[i])});
    for (const SignedEdge& e : g.edges)
        out.edges.push_back({rec.player_id(e.i), rec.player_id(e.j), 1.0, e.sign, std::nullopt});
    out.metadata["network"] = "signed_proximity";
    out.metadata["frame_index"] = std::to_string(g.frame_index);
    char rbuf[32];
    std::snprintf(rbuf, sizeof(rbuf), "%g", g.radius_m);
    out.metadata["radius_m"] = rbuf;
    out.metadata["coordinates"] = "raw";
    return out;
}

}  // namespace tracknets
