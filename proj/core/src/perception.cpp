#include "m3/perception.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace m3 {

void SpriteSheet::validate() const {
    if (sprites.empty()) throw std::invalid_argument("sprite sheet is empty");
    for (const auto& [code, img] : sprites)
        if (img.width != cell_px || img.height != cell_px)
            throw std::invalid_argument("sprite " + std::to_string(code) +
                                        " does not match cell_px");
}

namespace {

struct Rgb {
    uint8_t r, g, b;
};

// Distinct hues for codes 1..9. Every channel stays well above the
// background so each sprite has contrast in all three channels; that keeps
// the per-channel correlation average high under pixel noise.
constexpr Rgb kPalette[kMaxColors] = {
    {230, 120, 120}, {120, 220, 120}, {120, 140, 230}, {230, 210, 110}, {200, 120, 230},
    {240, 170, 110}, {110, 220, 220}, {240, 140, 190}, {170, 230, 120},
};

constexpr Rgb kBackground{24, 24, 32};

Image draw_sprite(int code, int cell_px) {
    Image img(cell_px, cell_px);
    for (int y = 0; y < cell_px; ++y)
        for (int x = 0; x < cell_px; ++x) img.set(x, y, kBackground.r, kBackground.g, kBackground.b);

    double cx = (cell_px - 1) / 2.0;
    double cy = cx;
    double rad = cell_px * 0.38;

    auto paint = [&](int x, int y, Rgb c) { img.set(x, y, c.r, c.g, c.b); };

    if (code == kBlocker) {
        // Gray brick with mortar lines.
        for (int y = 1; y < cell_px - 1; ++y)
            for (int x = 1; x < cell_px - 1; ++x) {
                bool mortar = y % (cell_px / 4) == 0 || (x + (y / (cell_px / 4)) * 3) % (cell_px / 2) == 0;
                paint(x, y, mortar ? Rgb{90, 90, 95} : Rgb{150, 150, 155});
            }
        return img;
    }
    if (code == kBomb) {
        // Dark disc with bright speckles.
        for (int y = 0; y < cell_px; ++y)
            for (int x = 0; x < cell_px; ++x) {
                double d = std::hypot(x - cx, y - cy);
                if (d <= rad) paint(x, y, Rgb{60, 50, 70});
                if (d <= rad && ((x * 7 + y * 13) % 11 == 0)) paint(x, y, Rgb{250, 245, 200});
            }
        return img;
    }

    Rgb c = kPalette[(code - 1) % kMaxColors];
    int shape = (code - 1) % kMaxColors;
    for (int y = 0; y < cell_px; ++y)
        for (int x = 0; x < cell_px; ++x) {
            double dx = x - cx, dy = y - cy;
            double d = std::hypot(dx, dy);
            bool on = false;
            switch (shape) {
                case 0: on = d <= rad; break;                                        // disc
                case 1: on = std::abs(dx) <= rad * 0.8 && std::abs(dy) <= rad * 0.8; break;  // square
                case 2: on = std::abs(dx) + std::abs(dy) <= rad * 1.1; break;        // diamond
                case 3: on = dy >= -rad * 0.7 && std::abs(dx) <= (dy + rad) * 0.5; break;    // triangle
                case 4: on = std::abs(dx) <= rad * 0.35 || std::abs(dy) <= rad * 0.35; break; // cross
                case 5: on = d <= rad && d >= rad * 0.5; break;                      // ring
                case 6: on = std::abs(dx) <= rad * 0.35; break;                      // vertical bar
                case 7: on = std::abs(dy) <= rad * 0.35; break;                      // horizontal bar
                case 8: on = std::abs(std::abs(dx) - std::abs(dy)) <= rad * 0.3 && d <= rad; break;  // X
            }
            if (on) paint(x, y, c);
        }
    return img;
}

}  // namespace

SpriteSheet make_default_sprites(int colors, int cell_px) {
    if (colors < 1 || colors > kMaxColors) throw std::invalid_argument("colors out of range");
    if (cell_px < 8) throw std::invalid_argument("cell_px too small");
    SpriteSheet sheet;
    sheet.cell_px = cell_px;
    sheet.sprites[kBlocker] = draw_sprite(kBlocker, cell_px);
    sheet.sprites[kBomb] = draw_sprite(kBomb, cell_px);
    for (int c = 1; c <= colors; ++c) sheet.sprites[c] = draw_sprite(c, cell_px);
    return sheet;
}

SpriteSheet load_sprites(const std::string& dir, int colors) {
    SpriteSheet sheet;
    for (int code = -1; code <= colors; ++code) {
        std::filesystem::path p = std::filesystem::path(dir) / (std::to_string(code) + ".png");
        if (!std::filesystem::exists(p)) {
            if (code <= 0) continue;  // specials are optional on disk
            throw std::runtime_error("missing sprite file " + p.string());
        }
        sheet.sprites[code] = read_png(p.string());
        sheet.cell_px = sheet.sprites[code].width;
    }
    sheet.validate();
    return sheet;
}

Image render_board(const Board& board, const SpriteSheet& sheet, const GridSpec& grid) {
    sheet.validate();
    if (grid.rows != board.rows() || grid.cols != board.cols() || grid.cell_px != sheet.cell_px)
        throw std::invalid_argument("grid spec does not match board/sprites");
    Image img(grid.origin_x + grid.cols * grid.cell_px + grid.origin_x,
              grid.origin_y + grid.rows * grid.cell_px + grid.origin_y);
    for (int r = 0; r < board.rows(); ++r)
        for (int c = 0; c < board.cols(); ++c) {
            auto it = sheet.sprites.find(board.at(r, c));
            if (it == sheet.sprites.end())
                throw std::invalid_argument("no sprite for code " +
                                            std::to_string(board.at(r, c)));
            img.blit(it->second, grid.origin_x + c * grid.cell_px,
                     grid.origin_y + r * grid.cell_px);
        }
    return img;
}

double ncc_at(const Image& image, const Image& tmpl, int x, int y) {
    if (x < 0 || y < 0 || x + tmpl.width > image.width || y + tmpl.height > image.height)
        throw std::out_of_range("template window out of image bounds");
    int n = tmpl.width * tmpl.height;
    double total = 0.0;
    for (int ch = 0; ch < 3; ++ch) {
        double sp = 0, st = 0;
        for (int ty = 0; ty < tmpl.height; ++ty)
            for (int tx = 0; tx < tmpl.width; ++tx) {
                sp += image.pixel(x + tx, y + ty)[ch];
                st += tmpl.pixel(tx, ty)[ch];
            }
        double mp = sp / n, mt = st / n;
        double num = 0, dp = 0, dt = 0;
        for (int ty = 0; ty < tmpl.height; ++ty)
            for (int tx = 0; tx < tmpl.width; ++tx) {
                double p = image.pixel(x + tx, y + ty)[ch] - mp;
                double t = tmpl.pixel(tx, ty)[ch] - mt;
                num += p * t;
                dp += p * p;
                dt += t * t;
            }
        // Zero-variance guard: a flat patch or flat template correlates 0.
        if (dp > 1e-12 && dt > 1e-12) total += num / std::sqrt(dp * dt);
    }
    return total / 3.0;
}

std::vector<TemplateHit> match_template(const Image& image, const Image& tmpl, double threshold) {
    if (tmpl.width > image.width || tmpl.height > image.height)
        throw std::invalid_argument("template larger than image");
    if (threshold <= 0.0 || threshold > 1.0) throw std::invalid_argument("threshold not in (0,1]");
    std::vector<TemplateHit> hits;
    for (int y = 0; y + tmpl.height <= image.height; ++y)
        for (int x = 0; x + tmpl.width <= image.width; ++x) {
            double s = ncc_at(image, tmpl, x, y);
            if (s >= threshold) hits.push_back({x, y, s});
        }
    // Non-maximum suppression within one template-width radius.
    std::stable_sort(hits.begin(), hits.end(),
                     [](const TemplateHit& a, const TemplateHit& b) { return a.score > b.score; });
    std::vector<TemplateHit> kept;
    for (const auto& h : hits) {
        bool suppressed = false;
        for (const auto& k : kept)
            if (std::abs(h.x - k.x) < tmpl.width && std::abs(h.y - k.y) < tmpl.width) {
                suppressed = true;
                break;
            }
        if (!suppressed) kept.push_back(h);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const TemplateHit& a, const TemplateHit& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    return kept;
}

Board recognize_board(const Image& image, const SpriteSheet& sheet, const GridSpec& grid,
                      double threshold, std::vector<DetectionLayer>* layers_out) {
    sheet.validate();
    if (grid.origin_x < 0 || grid.origin_y < 0 ||
        grid.origin_x + grid.cols * grid.cell_px > image.width ||
        grid.origin_y + grid.rows * grid.cell_px > image.height)
        throw std::invalid_argument("grid does not fit inside image");

    std::map<int, DetectionLayer> layers;
    for (const auto& [code, _] : sheet.sprites) layers[code] = DetectionLayer{code, {}};

    std::vector<int> cells;
    cells.reserve(static_cast<size_t>(grid.rows) * grid.cols);
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c) {
            int x = grid.origin_x + c * grid.cell_px;
            int y = grid.origin_y + r * grid.cell_px;
            int best_code = 0;
            double best = -2.0, second = -2.0;
            for (const auto& [code, tmpl] : sheet.sprites) {
                double s = ncc_at(image, tmpl, x, y);
                if (s >= threshold) layers[code].hits.push_back({x, y, s});
                if (s > best) {
                    second = best;
                    best = s;
                    best_code = code;
                } else if (s > second) {
                    second = s;
                }
            }
            Position cell{r, c};
            if (best < threshold)
                throw RecognitionError(RecognitionError::Kind::UnrecognizedCell, cell,
                                       "no template reached threshold at cell (" +
                                           std::to_string(r) + "," + std::to_string(c) + ")");
            if (second >= threshold && best - second <= 0.02)
                throw RecognitionError(RecognitionError::Kind::AmbiguousCell, cell,
                                       "two templates within 0.02 at cell (" + std::to_string(r) +
                                           "," + std::to_string(c) + ")");
            cells.push_back(best_code);
        }

    if (layers_out) {
        layers_out->clear();
        for (auto& [_, layer] : layers) layers_out->push_back(std::move(layer));
    }
    return Board(grid.rows, grid.cols, std::move(cells));
}

}  // namespace m3
