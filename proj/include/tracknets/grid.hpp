#pragma once

#include <compare>
#include <vector>

#include "tracknets/model.hpp"

namespace tracknets {

/// Uniform N x M partition of the pitch. Columns run along x, rows along y.
struct GridSpec {
    int n_cols = 5;
    int n_rows = 5;
    PitchSpec pitch;

    double cell_width() const { return pitch.length_m / n_cols; }
    double cell_height() const { return pitch.width_m / n_rows; }
    void validate() const;
};

struct CellId {
    int col = 0;
    int row = 0;
    auto operator<=>(const CellId&) const = default;
};

/// Cell containing p. Interior boundaries belong to the higher-index cell;
/// points outside the pitch are clamped into the nearest boundary cell.
CellId cell_index(Vec2 p, const GridSpec& g);

/// Center of a cell in pitch coordinates.
Vec2 cell_center(CellId c, const GridSpec& g);

struct Crossing {
    CellId from;
    CellId to;
    auto operator<=>(const Crossing&) const = default;
};

/// Every cell-boundary crossing along the straight segment p0 -> p1, in
/// traversal order. Consecutive entries chain (to of k == from of k+1) and
/// each step is between 4-neighbors; a segment through a grid corner is
/// resolved as the x-crossing first, then the y-crossing.
std::vector<Crossing> segment_crossings(Vec2 p0, Vec2 p1, const GridSpec& g);

}  // namespace tracknets
