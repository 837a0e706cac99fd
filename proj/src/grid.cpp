#include "tracknets/grid.hpp"

#include <algorithm>
#include <cmath>

namespace tracknets {

void GridSpec::validate() const {
    if (n_cols < 1 || n_rows < 1) throw DataError("grid must have at least one cell per axis");
    if (pitch.length_m <= 0 || pitch.width_m <= 0) throw DataError("pitch dimensions must be positive");
}

CellId cell_index(Vec2 p, const GridSpec& g) {
    const double sx = p.x + g.pitch.length_m * 0.5;
    const double sy = p.y + g.pitch.width_m * 0.5;
    const int col = std::clamp(static_cast<int>(std::floor(sx / g.cell_width())), 0, g.n_cols - 1);
    const int row = std::clamp(static_cast<int>(std::floor(sy / g.cell_height())), 0, g.n_rows - 1);
    return {col, row};
}

Vec2 cell_center(CellId c, const GridSpec& g) {
    return {-g.pitch.length_m * 0.5 + (c.col + 0.5) * g.cell_width(),
            -g.pitch.width_m * 0.5 + (c.row + 0.5) * g.cell_height()};
}

namespace {

struct BoundaryEvent {
    double t;   // parametric position along the segment, ordering only
    int axis;   // 0 = column boundary, 1 = row boundary
    int step;   // +1 or -1 cell step along that axis
};

// Crossing events for one axis, derived from the clamped endpoint cells so
// the emitted chain always starts at cell(p0) and ends at cell(p1).
void axis_events(double s0, double s1, double cell_size, int c0, int c1, int axis,
                 std::vector<BoundaryEvent>& out) {
    const double d = s1 - s0;
    if (c1 > c0) {
        for (int k = c0 + 1; k <= c1; ++k)
            out.push_back({(k * cell_size - s0) / d, axis, +1});
    } else if (c1 < c0) {
        // Moving down: the boundary at k belongs to cell k, so the change
        // happens as the coordinate drops below k*cell_size.
        for (int k = c0; k >= c1 + 1; --k)
            out.push_back({(k * cell_size - s0) / d, axis, -1});
    }
}

}  // namespace

std::vector<Crossing> segment_crossings(Vec2 p0, Vec2 p1, const GridSpec& g) {
    const CellId c0 = cell_index(p0, g);
    const CellId c1 = cell_index(p1, g);
    std::vector<Crossing> out;
    if (c0 == c1) return out;

    std::vector<BoundaryEvent> events;
    axis_events(p0.x + g.pitch.length_m * 0.5, p1.x + g.pitch.length_m * 0.5, g.cell_width(),
                c0.col, c1.col, 0, events);
    axis_events(p0.y + g.pitch.width_m * 0.5, p1.y + g.pitch.width_m * 0.5, g.cell_height(),
                c0.row, c1.row, 1, events);

    // Corner hits (equal t) resolve as the x-crossing first.
    std::stable_sort(events.begin(), events.end(), [](const BoundaryEvent& a, const BoundaryEvent& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.axis < b.axis;
    });

    CellId cur = c0;
    out.reserve(events.size());
    for (const BoundaryEvent& ev : events) {
        CellId next = cur;
        if (ev.axis == 0)
            next.col += ev.step;
        else
            next.row += ev.step;
        out.push_back({cur, next});
        cur = next;
    }
    return out;
}

}  // namespace tracknets
