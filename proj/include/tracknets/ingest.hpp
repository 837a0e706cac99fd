#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tracknets/model.hpp"

namespace tracknets {

struct IngestReport {
    std::int64_t frame_count = 0;
    std::int64_t dropped_rows = 0;  // input rows whose content did not reach the recording
    std::int64_t warning_count = 0;
    std::vector<std::string> warnings;  // first max_stored_warnings only
};

struct IngestOptions {
    double bounds_margin_m = 5.0;  // positions beyond this are clamped with a warning
    std::size_t max_stored_warnings = 100;
};

struct PossessionParams {
    double control_radius_m = 2.0;
    int hysteresis_frames = 13;  // ~0.5 s at 25 fps
    bool use_explicit_column = true;
};

struct ParseResult {
    MatchRecording rec;
    // Present iff every frame carried a non-empty possession value.
    std::optional<PhaseTimeline> explicit_timeline;
    IngestReport report;
};

/// Parses the tracking CSV and metadata JSON into a validated recording.
/// Malformed rows are skipped with a warning; missing mandatory metadata or
/// zero valid frames raise DataError.
ParseResult parse_tracking(std::istream& tracking, std::istream& metadata,
                           const IngestOptions& options = {});
ParseResult parse_tracking_files(const std::string& tracking_path,
                                 const std::string& metadata_path,
                                 const IngestOptions& options = {});

/// Possession labels for every frame. With an explicit timeline (and
/// use_explicit_column) the labels pass through, except that frames without a
/// live ball are forced Dead. Otherwise a nearest-player heuristic runs: the
/// team of the player nearest the ball (closer than control_radius_m) is the
/// candidate; possession flips only after the other team has been candidate
/// for hysteresis_frames consecutive alive frames, and the whole candidate
/// run is relabeled at the flip.
PhaseTimeline segment_possession(const MatchRecording& rec,
                                 const std::optional<PhaseTimeline>& explicit_timeline,
                                 const PossessionParams& params = {});

/// Seconds spent in a phase: frame count / fps.
double phase_duration(const PhaseTimeline& timeline, Phase phase, double fps);

/// Inverse of parse_tracking for the CSV side; possession column filled from
/// the timeline when given, left empty otherwise.
std::string write_tracking_csv(const MatchRecording& rec,
                               const PhaseTimeline* possession = nullptr);
std::string write_metadata_json(const MatchRecording& rec);

}  // namespace tracknets
