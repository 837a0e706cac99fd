#include "tracknets/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace tracknets {

namespace {

constexpr std::string_view kHeader = "frame,period,time_ms,obj,team,player,x,y,z,ball_status,possession";

struct WarningSink {
    IngestReport& report;
    std::size_t cap;

    void add(std::string msg) {
        ++report.warning_count;
        if (report.warnings.size() < cap) report.warnings.push_back(std::move(msg));
    }
};

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_double(std::string_view s, double& out) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

struct FrameAccum {
    int period = 0;
    std::int64_t time_ms = 0;
    bool saw_ball_row = false;
    std::optional<Vec2> ball;
    bool ball_alive = false;
    std::map<PlayerIndex, Vec2> players;
    std::optional<Phase> possession;
    bool has_possession = false;
};

MatchRecording metadata_recording(std::istream& metadata, const IngestOptions& options) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(metadata);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("metadata JSON parse error: ") + e.what());
    }

    auto require = [&](const char* key) -> const nlohmann::json& {
        if (!doc.contains(key)) throw DataError(std::string("metadata missing mandatory field: ") + key);
        return doc.at(key);
    };

    MatchRecording rec;
    rec.bounds_margin_m = options.bounds_margin_m;
    try {
        rec.pitch.length_m = require("pitch_length_m").get<double>();
        rec.pitch.width_m = require("pitch_width_m").get<double>();
        rec.fps = require("fps").get<double>();
        rec.home.team_id = require("home_team_id").get<std::string>();
        rec.away.team_id = require("away_team_id").get<std::string>();
        rec.home.player_ids = require("home_players").get<std::vector<std::string>>();
        rec.away.player_ids = require("away_players").get<std::vector<std::string>>();
        const auto& attack = require("attack_direction");
        for (int period = 1; period <= 2; ++period) {
            const std::string pkey = std::to_string(period);
            if (!attack.contains(pkey))
                throw DataError("metadata attack_direction missing period " + pkey);
            for (int team = 0; team < 2; ++team) {
                const std::string& tid = team == kHome ? rec.home.team_id : rec.away.team_id;
                if (!attack.at(pkey).contains(tid))
                    throw DataError("metadata attack_direction missing team " + tid +
                                    " in period " + pkey);
                const std::string dir = attack.at(pkey).at(tid).get<std::string>();
                if (dir == "+x")
                    rec.attack_sign[team][period - 1] = 1;
                else if (dir == "-x")
                    rec.attack_sign[team][period - 1] = -1;
                else
                    throw DataError("attack_direction values must be \"+x\" or \"-x\"");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("metadata field has wrong type: ") + e.what());
    }
    return rec;
}

}  // namespace

ParseResult parse_tracking(std::istream& tracking, std::istream& metadata,
                           const IngestOptions& options) {
    ParseResult result;
    result.rec = metadata_recording(metadata, options);
    MatchRecording& rec = result.rec;
    WarningSink warn{result.report, options.max_stored_warnings};

    std::unordered_map<std::string, PlayerIndex> player_index;
    std::unordered_map<std::string, int> team_index;
    team_index[rec.home.team_id] = kHome;
    team_index[rec.away.team_id] = kAway;
    for (int i = 0; i < rec.player_count(); ++i) player_index[rec.player_id(i)] = i;
    if (player_index.size() != static_cast<std::size_t>(rec.player_count()))
        throw DataError("player ids must be unique across both team sheets");

    std::string line;
    if (!std::getline(tracking, line)) throw DataError("tracking file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw DataError("tracking header mismatch, expected: " + std::string(kHeader));

    const double max_x = rec.pitch.length_m / 2 + options.bounds_margin_m;
    const double max_y = rec.pitch.width_m / 2 + options.bounds_margin_m;

    std::map<std::int64_t, FrameAccum> acc;
    std::int64_t line_no = 1;
    while (std::getline(tracking, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        auto drop = [&](const std::string& why) {
            ++result.report.dropped_rows;
            warn.add("line " + std::to_string(line_no) + ": " + why + ", row skipped");
        };
        if (fields.size() != 11) {
            drop("expected 11 fields, got " + std::to_string(fields.size()));
            continue;
        }

        std::int64_t frame_index = 0, time_ms = 0, period = 0;
        if (!parse_int(fields[0], frame_index) || frame_index < 0) {
            drop("bad frame index");
            continue;
        }
        if (!parse_int(fields[1], period) || (period != 1 && period != 2)) {
            drop("bad period");
            continue;
        }
        if (!parse_int(fields[2], time_ms)) {
            drop("bad time_ms");
            continue;
        }

        FrameAccum& fa = acc[frame_index];
        if (fa.period != 0 && fa.period != period)
            warn.add("line " + std::to_string(line_no) + ": period conflict in frame " +
                     std::to_string(frame_index) + ", last row wins");
        fa.period = static_cast<int>(period);
        fa.time_ms = time_ms;

        const std::string_view obj = fields[3];
        const std::string_view possession = fields[10];
        if (!possession.empty()) {
            if (possession == "home")
                fa.possession = Phase::HomePossession;
            else if (possession == "away")
                fa.possession = Phase::AwayPossession;
            else if (possession == "dead")
                fa.possession = Phase::Dead;
            else {
                drop("bad possession value");
                continue;
            }
            fa.has_possession = true;
        }

        auto clamp_warn = [&](Vec2 p) {
            Vec2 c{std::clamp(p.x, -max_x, max_x), std::clamp(p.y, -max_y, max_y)};
            if (c.x != p.x || c.y != p.y)
                warn.add("line " + std::to_string(line_no) + ": position out of bounds, clamped");
            return c;
        };

        if (obj == "ball") {
            const std::string_view status = fields[9];
            if (status != "alive" && status != "dead") {
                drop("bad ball_status");
                continue;
            }
            if (fa.saw_ball_row) {
                ++result.report.dropped_rows;
                warn.add("line " + std::to_string(line_no) + ": duplicate ball row for frame " +
                         std::to_string(frame_index) + ", last row wins");
            }
            fa.saw_ball_row = true;
            fa.ball_alive = status == "alive";
            if (fields[6].empty() && fields[7].empty()) {
                fa.ball.reset();
            } else {
                Vec2 p;
                if (!parse_double(fields[6], p.x) || !parse_double(fields[7], p.y)) {
                    drop("bad ball coordinates");
                    continue;
                }
                fa.ball = clamp_warn(p);
            }
        } else if (obj == "player") {
            const auto team_it = team_index.find(std::string(fields[4]));
            if (team_it == team_index.end()) {
                drop("unknown team id '" + std::string(fields[4]) + "'");
                continue;
            }
            const auto player_it = player_index.find(std::string(fields[5]));
            if (player_it == player_index.end()) {
                drop("unknown player id '" + std::string(fields[5]) + "'");
                continue;
            }
            const PlayerIndex pi = player_it->second;
            if (rec.team_of(pi) != team_it->second) {
                drop("player '" + std::string(fields[5]) + "' listed under wrong team");
                continue;
            }
            Vec2 p;
            if (!parse_double(fields[6], p.x) || !parse_double(fields[7], p.y)) {
                drop("bad player coordinates");
                continue;
            }
            if (fa.players.count(pi)) {
                ++result.report.dropped_rows;
                warn.add("line " + std::to_string(line_no) + ": duplicate row for player " +
                         std::string(fields[5]) + " in frame " + std::to_string(frame_index) +
                         ", last row wins");
            }
            fa.players[pi] = clamp_warn(p);
        } else {
            drop("unknown obj '" + std::string(obj) + "'");
        }
    }

    if (acc.empty()) throw DataError("tracking file contains no valid frames");

    bool all_have_possession = true;
    std::vector<Phase> explicit_labels;
    explicit_labels.reserve(acc.size());
    std::int64_t prev_index = -1;
    for (const auto& [index, fa] : acc) {
        Frame f;
        f.frame_index = index;
        f.time_ms = fa.time_ms;
        f.period = fa.period;
        f.ball = fa.ball;
        f.ball_alive = fa.saw_ball_row && fa.ball_alive;
        f.players.reserve(fa.players.size());
        for (const auto& [pi, pos] : fa.players) f.players.push_back({pi, pos});
        if (prev_index >= 0 && index - prev_index > static_cast<std::int64_t>(rec.fps))
            warn.add("gap of " + std::to_string(index - prev_index) + " frames after frame " +
                     std::to_string(prev_index));
        prev_index = index;
        rec.frames.push_back(std::move(f));
        all_have_possession = all_have_possession && fa.has_possession;
        explicit_labels.push_back(fa.possession.value_or(Phase::Dead));
    }
    result.report.frame_count = static_cast<std::int64_t>(rec.frames.size());
    if (all_have_possession)
        result.explicit_timeline = PhaseTimeline{std::move(explicit_labels), PhaseSource::Explicit};

    rec.validate();
    return result;
}

ParseResult parse_tracking_files(const std::string& tracking_path, const std::string& metadata_path,
                                 const IngestOptions& options) {
    std::ifstream tracking(tracking_path);
    if (!tracking) throw DataError("cannot open tracking file: " + tracking_path);
    std::ifstream metadata(metadata_path);
    if (!metadata) throw DataError("cannot open metadata file: " + metadata_path);
    return parse_tracking(tracking, metadata, options);
}

namespace {

// Per-frame candidate: which team uniquely holds the nearest player within
// the control radius. kNone = nobody close enough, kTie = both teams tie.
enum Candidate { kNone = -1, kTieBreak = 2 };

int frame_candidate(const MatchRecording& rec, const Frame& f, double control_radius_m) {
    if (!f.ball_alive || !f.ball) return kNone;
    double best = control_radius_m * control_radius_m;
    int team = kNone;
    bool tie = false;
    for (const PlayerPos& pp : f.players) {
        const double d2 = dist2(pp.pos, *f.ball);
        if (d2 < best) {
            best = d2;
            team = rec.team_of(pp.player);
            tie = false;
        } else if (d2 == best && team != kNone && rec.team_of(pp.player) != team) {
            tie = true;
        }
    }
    if (team == kNone) return kNone;
    return tie ? kTieBreak : team;
}

}  // namespace

PhaseTimeline segment_possession(const MatchRecording& rec,
                                 const std::optional<PhaseTimeline>& explicit_timeline,
                                 const PossessionParams& params) {
    if (rec.frames.empty()) throw DataError("recording has no frames");
    const std::size_t n = rec.frames.size();

    if (explicit_timeline && params.use_explicit_column) {
        if (explicit_timeline->labels.size() != n)
            throw DataError("explicit timeline length does not match frame count");
        PhaseTimeline out = *explicit_timeline;
        out.source = PhaseSource::Explicit;
        for (std::size_t i = 0; i < n; ++i)
            if (!rec.frames[i].ball_alive || !rec.frames[i].ball) out.labels[i] = Phase::Dead;
        return out;
    }

    if (params.control_radius_m <= 0) throw DataError("control_radius_m must be positive");
    if (params.hysteresis_frames < 1) throw DataError("hysteresis_frames must be >= 1");

    PhaseTimeline out;
    out.source = PhaseSource::Heuristic;
    out.labels.assign(n, Phase::Dead);

    int current = kNone;
    int challenger = kNone;
    int run_len = 0;
    std::size_t run_start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Frame& f = rec.frames[i];
        if (!f.ball_alive || !f.ball) {
            challenger = kNone;
            run_len = 0;
            continue;  // label stays Dead; possession holder persists
        }
        int cand = frame_candidate(rec, f, params.control_radius_m);
        if (cand == kTieBreak) cand = current;  // equidistant teams: keep holder

        if (current == kNone) {
            if (cand != kNone) {
                current = cand;
                out.labels[i] = possession_phase(current);
            }
            continue;
        }

        if (cand != kNone && cand != current) {
            if (challenger != cand) {
                challenger = cand;
                run_len = 1;
                run_start = i;
            } else {
                ++run_len;
            }
            if (run_len >= params.hysteresis_frames) {
                // The whole challenger run belongs to the new holder.
                for (std::size_t j = run_start; j <= i; ++j)
                    out.labels[j] = possession_phase(cand);
                current = cand;
                challenger = kNone;
                run_len = 0;
            } else {
                out.labels[i] = possession_phase(current);
            }
        } else {
            challenger = kNone;
            run_len = 0;
            out.labels[i] = possession_phase(current);
        }
    }
    return out;
}

double phase_duration(const PhaseTimeline& timeline, Phase phase, double fps) {
    if (fps <= 0) throw DataError("fps must be positive");
    return static_cast<double>(timeline.count(phase)) / fps;
}

namespace {

std::string format_pos(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string write_tracking_csv(const MatchRecording& rec, const PhaseTimeline* possession) {
    if (possession && possession->labels.size() != rec.frames.size())
        throw DataError("possession timeline length does not match frame count");
    std::string out;
    out += kHeader;
    out += '\n';
    for (std::size_t i = 0; i < rec.frames.size(); ++i) {
        const Frame& f = rec.frames[i];
        const std::string prefix = std::to_string(f.frame_index) + ',' +
                                   std::to_string(f.period) + ',' + std::to_string(f.time_ms) + ',';
        const std::string status = f.ball_alive ? "alive" : "dead";
        const std::string poss =
            possession ? std::string(phase_name(possession->labels[i])) : std::string();
        out += prefix + "ball,,,";
        if (f.ball) out += format_pos(f.ball->x) + ',' + format_pos(f.ball->y) + ",0.000000,";
        else out += ",,,";
        out += status + ',' + poss + '\n';
        for (const PlayerPos& pp : f.players) {
            out += prefix + "player," + rec.sheet(rec.team_of(pp.player)).team_id + ',' +
                   rec.player_id(pp.player) + ',' + format_pos(pp.pos.x) + ',' +
                   format_pos(pp.pos.y) + ",0.000000," + status + ',' + poss + '\n';
        }
    }
    return out;
}

std::string write_metadata_json(const MatchRecording& rec) {
    nlohmann::json doc;
    doc["pitch_length_m"] = rec.pitch.length_m;
    doc["pitch_width_m"] = rec.pitch.width_m;
    doc["fps"] = rec.fps;
    doc["home_team_id"] = rec.home.team_id;
    doc["away_team_id"] = rec.away.team_id;
    doc["home_players"] = rec.home.player_ids;
    doc["away_players"] = rec.away.player_ids;
    nlohmann::json attack;
    for (int period = 1; period <= 2; ++period) {
        nlohmann::json per;
        per[rec.home.team_id] = rec.attack_sign[kHome][period - 1] > 0 ? "+x" : "-x";
        per[rec.away.team_id] = rec.attack_sign[kAway][period - 1] > 0 ? "+x" : "-x";
        attack[std::to_string(period)] = per;
    }
    doc["attack_direction"] = attack;
    return doc.dump(2) + "\n";
}

}  // namespace tracknets
