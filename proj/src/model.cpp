#include "tracknets/model.hpp"

#include <algorithm>
#include <set>

namespace tracknets {

const Vec2* Frame::position_of(PlayerIndex p) const {
    auto it = std::lower_bound(players.begin(), players.end(), p,
                               [](const PlayerPos& a, PlayerIndex b) { return a.player < b; });
    if (it == players.end() || it->player != p) return nullptr;
    return &it->pos;
}

const std::string& MatchRecording::player_id(PlayerIndex p) const {
    const int nh = roster_size(home);
    if (p < 0 || p >= player_count()) throw DataError("player index out of range");
    return p < nh ? home.player_ids[p] : away.player_ids[p - nh];
}

std::vector<PlayerIndex> MatchRecording::roster_indices(int team) const {
    const int nh = roster_size(home);
    std::vector<PlayerIndex> out;
    if (team == kHome) {
        for (int i = 0; i < nh; ++i) out.push_back(i);
    } else {
        for (int i = 0; i < roster_size(away); ++i) out.push_back(nh + i);
    }
    return out;
}

std::optional<PlayerIndex> MatchRecording::find_player(std::string_view id) const {
    for (int i = 0; i < player_count(); ++i)
        if (player_id(i) == id) return i;
    return std::nullopt;
}

int MatchRecording::team_index(std::string_view team_id) const {
    if (team_id == home.team_id) return kHome;
    if (team_id == away.team_id) return kAway;
    throw DataError("unknown team id: " + std::string(team_id));
}

int MatchRecording::attack_direction(int team, int period) const {
    if (team != kHome && team != kAway) throw DataError("invalid team index");
    if (period != 1 && period != 2) throw DataError("invalid period: " + std::to_string(period));
    const int sign = attack_sign[team][period - 1];
    if (sign != 1 && sign != -1)
        throw DataError("attack direction undefined for team " + sheet(team).team_id +
                        " period " + std::to_string(period));
    return sign;
}

void MatchRecording::validate() const {
    if (fps <= 0) throw DataError("fps must be positive");
    if (pitch.length_m <= 0 || pitch.width_m <= 0) throw DataError("pitch dimensions must be positive");
    if (home.player_ids.empty() || away.player_ids.empty())
        throw DataError("team sheets must list at least one player");
    if (home.team_id == away.team_id) throw DataError("team ids must differ");

    std::set<std::string> ids;
    for (const auto& sheet : {home, away})
        for (const auto& id : sheet.player_ids)
            if (!ids.insert(id).second) throw DataError("duplicate player id: " + id);

    for (int period = 1; period <= 2; ++period) {
        const int h = attack_direction(kHome, period);
        const int a = attack_direction(kAway, period);
        if (h + a != 0)
            throw DataError("attack directions must be opposite in period " + std::to_string(period));
    }

    const double max_x = pitch.length_m / 2 + bounds_margin_m;
    const double max_y = pitch.width_m / 2 + bounds_margin_m;
    std::int64_t prev_index = -1;
    for (const Frame& f : frames) {
        if (f.frame_index <= prev_index) throw DataError("frame indices must be strictly increasing");
        prev_index = f.frame_index;
        if (f.period != 1 && f.period != 2) throw DataError("frame period must be 1 or 2");
        PlayerIndex prev_player = -1;
        for (const PlayerPos& pp : f.players) {
            if (pp.player <= prev_player) throw DataError("frame players must be sorted and unique");
            prev_player = pp.player;
            if (pp.player >= player_count()) throw DataError("frame references unknown player");
            if (std::abs(pp.pos.x) > max_x || std::abs(pp.pos.y) > max_y)
                throw DataError("player position outside bounds margin");
        }
        if (f.ball && (std::abs(f.ball->x) > max_x || std::abs(f.ball->y) > max_y))
            throw DataError("ball position outside bounds margin");
    }
}

Vec2 canonical_position(Vec2 p, int team, int period, const MatchRecording& rec) {
    return rec.attack_direction(team, period) > 0 ? p : Vec2{-p.x, -p.y};
}

std::string_view phase_name(Phase p) {
    switch (p) {
        case Phase::HomePossession: return "home";
        case Phase::AwayPossession: return "away";
        case Phase::Dead: return "dead";
    }
    return "dead";
}

std::string_view phase_source_name(PhaseSource s) {
    return s == PhaseSource::Explicit ? "explicit" : "heuristic";
}

std::int64_t PhaseTimeline::count(Phase p) const {
    std::int64_t n = 0;
    for (Phase l : labels)
        if (l == p) ++n;
    return n;
}

void WeightedGraph::validate() const {
    std::set<std::string> ids;
    for (const GraphNode& n : nodes)
        if (!ids.insert(n.id).second) throw DataError("duplicate node id: " + n.id);
    for (const GraphEdge& e : edges) {
        if (!ids.count(e.src) || !ids.count(e.dst))
            throw DataError("edge references unknown node: " + e.src + " -> " + e.dst);
        if (e.weight < 0) throw DataError("edge weight must be non-negative");
        if (e.sign.has_value() != signed_edges)
            throw DataError("edge sign must be present iff the graph is signed");
        if (e.sign && *e.sign != 1 && *e.sign != -1) throw DataError("edge sign must be +1 or -1");
    }
}

}  // namespace tracknets
