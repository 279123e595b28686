#pragma once

#include <map>
#include <string>
#include <vector>

#include "m3/board.hpp"
#include "m3/image.hpp"

namespace m3 {

// One template per cell code, all cell_px x cell_px.
struct SpriteSheet {
    std::map<int, Image> sprites;
    int cell_px = 0;

    void validate() const;
};

struct GridSpec {
    int origin_x = 0;
    int origin_y = 0;
    int cell_px = 0;
    int rows = 0;
    int cols = 0;
};

struct TemplateHit {
    int x = 0;
    int y = 0;
    double score = 0.0;
};

// Per-color hit layer produced while recognizing a screenshot.
struct DetectionLayer {
    int color = 0;
    std::vector<TemplateHit> hits;
};

class RecognitionError : public std::runtime_error {
  public:
    enum class Kind { UnrecognizedCell, AmbiguousCell };

    RecognitionError(Kind kind, Position cell, const std::string& what)
        : std::runtime_error(what), kind(kind), cell(cell) {}

    Kind kind;
    Position cell;
};

// Deterministic sprite set with one distinct shape and hue per code
// (-1, 0, 1..colors). Stands in for game art in the simulator.
SpriteSheet make_default_sprites(int colors, int cell_px = 16);

// Loads a sprite directory: one PNG per code, filename "<code>.png".
SpriteSheet load_sprites(const std::string& dir, int colors);

Image render_board(const Board& board, const SpriteSheet& sheet, const GridSpec& grid);

// Zero-mean normalized cross-correlation per channel, averaged. Returns
// hits with score >= threshold, non-maximum-suppressed within one
// cell_px radius (cell_px taken as the template width).
std::vector<TemplateHit> match_template(const Image& image, const Image& tmpl, double threshold);

// NCC of a template against the image patch at (x, y). Zero-variance
// signals score 0.
double ncc_at(const Image& image, const Image& tmpl, int x, int y);

// Per cell, the code whose template correlates best and >= threshold.
// Throws RecognitionError for cells with no hit or two near-equal hits.
Board recognize_board(const Image& image, const SpriteSheet& sheet, const GridSpec& grid,
                      double threshold, std::vector<DetectionLayer>* layers_out = nullptr);

}  // namespace m3
