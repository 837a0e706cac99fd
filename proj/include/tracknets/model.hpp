#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracknets {

/// Fatal data-level problem: malformed input, missing metadata, unknown team.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend Vec2 operator*(double s, Vec2 a) { return a * s; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist2(Vec2 a, Vec2 b) { return norm2(a - b); }
inline double dist(Vec2 a, Vec2 b) { return std::sqrt(dist2(a, b)); }

/// Playing surface in meters. Origin at pitch center, x along the length,
/// y along the width.
struct PitchSpec {
    double length_m = 105.0;
    double width_m = 68.0;
};

struct TeamSheet {
    std::string team_id;
    std::vector<std::string> player_ids;
};

inline int roster_size(const TeamSheet& sheet) {
    return static_cast<int>(sheet.player_ids.size());
}

/// Dense index into the match roster (home sheet first, away sheet after).
using PlayerIndex = int;

constexpr int kHome = 0;
constexpr int kAway = 1;

struct PlayerPos {
    PlayerIndex player = -1;
    Vec2 pos;
};

/// One tracked frame. `players` is sorted by player index; a player appears
/// at most once and only while on the pitch.
struct Frame {
    std::int64_t frame_index = 0;
    std::int64_t time_ms = 0;
    int period = 1;
    std::optional<Vec2> ball;
    bool ball_alive = false;
    std::vector<PlayerPos> players;

    const Vec2* position_of(PlayerIndex p) const;
};

/// Immutable container for one tracked match. Frames are strictly increasing
/// in frame_index; attack directions are defined for both teams and both
/// periods and are opposite within a period.
struct MatchRecording {
    PitchSpec pitch;
    double fps = 25.0;
    TeamSheet home;
    TeamSheet away;
    double bounds_margin_m = 5.0;
    // attack_sign[team][period-1] is +1 when that team attacks +x.
    std::array<std::array<int, 2>, 2> attack_sign{{{0, 0}, {0, 0}}};
    std::vector<Frame> frames;

    int player_count() const { return roster_size(home) + roster_size(away); }
    const std::string& player_id(PlayerIndex p) const;
    int team_of(PlayerIndex p) const { return p < roster_size(home) ? kHome : kAway; }
    const TeamSheet& sheet(int team) const { return team == kHome ? home : away; }
    std::vector<PlayerIndex> roster_indices(int team) const;
    std::optional<PlayerIndex> find_player(std::string_view id) const;

    /// Maps a team id string to kHome/kAway; throws DataError when unknown.
    int team_index(std::string_view team_id) const;
    /// +1 or -1; throws DataError when period is not 1 or 2 or the sign is unset.
    int attack_direction(int team, int period) const;

    /// Checks the container invariants; throws DataError on violation.
    void validate() const;
};

/// Orientation normalization: identity when the team attacks +x in that
/// period, point reflection (-x, -y) otherwise. Involution.
Vec2 canonical_position(Vec2 p, int team, int period, const MatchRecording& rec);

enum class Phase { HomePossession, AwayPossession, Dead };

inline Phase possession_phase(int team) {
    return team == kHome ? Phase::HomePossession : Phase::AwayPossession;
}

std::string_view phase_name(Phase p);

enum class PhaseSource { Explicit, Heuristic };

std::string_view phase_source_name(PhaseSource s);

/// Per-frame possession labels, same length as the recording.
struct PhaseTimeline {
    std::vector<Phase> labels;
    PhaseSource source = PhaseSource::Heuristic;

    std::int64_t count(Phase p) const;
};

// ---------------------------------------------------------------------------
// Generic weighted-graph export target shared by all four network builders.

struct GraphNode {
    std::string id;
    Vec2 pos;
    double size_value = 0.0;
    std::string label;
};

struct GraphEdge {
    std::string src;
    std::string dst;
    double weight = 0.0;
    std::optional<int> sign;     // +1/-1, present iff the graph is signed
    std::optional<Vec2> anchor;  // optional display anchor (e.g. mean marking position)
};

struct WeightedGraph {
    bool directed = false;
    bool signed_edges = false;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::map<std::string, std::string> metadata;

    /// Endpoints must exist, weights must be >= 0, sign present iff signed.
    void validate() const;
};

}  // namespace tracknets
