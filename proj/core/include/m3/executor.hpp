#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "m3/board.hpp"

namespace m3 {

struct Gesture {
    enum class Kind { Tap, Swipe };

    Kind kind = Kind::Tap;
    int x1 = 0, y1 = 0;
    int x2 = 0, y2 = 0;  // swipe only

    static Gesture tap(int x, int y) { return {Kind::Tap, x, y, 0, 0}; }
    static Gesture swipe(int x1, int y1, int x2, int y2) { return {Kind::Swipe, x1, y1, x2, y2}; }

    friend bool operator==(const Gesture&, const Gesture&) = default;
};

// Per-axis affine map from (row, col) to screen pixels. axis_order
// selects which index drives which pixel axis; the worked-example game
// maps the column index to the vertical axis with a negative step, so
// both orientations and negative steps are representable.
struct Calibration {
    enum class AxisOrder {
        ColX,  // x = ax + bx*col, y = ay + by*row
        RowX,  // x = ax + bx*row, y = ay + by*col
    };

    double ax = 0, bx = 1;
    double ay = 0, by = 1;
    AxisOrder axis_order = AxisOrder::ColX;

    std::pair<double, double> to_pixel(Position p) const;
    Position to_cell(double x, double y) const;

    // Natural mapping for a rendered grid: pixel centers of cells.
    static Calibration from_grid(int origin_x, int origin_y, int cell_px);
};

// Least-squares per-axis fit of pixel samples. Needs >=2 samples and
// variation in at least one mapped index; an axis the samples leave
// unconstrained falls back to unit step through the sample mean.
Calibration fit_calibration(const std::vector<std::pair<Position, std::pair<double, double>>>& samples,
                            Calibration::AxisOrder axis_order);

struct ScreenRect {
    int x = 0, y = 0, width = 0, height = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + width && py >= y && py < y + height;
    }
};

// Maps a move to a pixel swipe (rounded to nearest pixel). Throws when an
// endpoint leaves the screen.
Gesture move_to_gesture(const Move& move, const Calibration& cal, const ScreenRect& screen);

// Inverse mapping: swipe endpoints to their nearest cells. Returns
// nullopt for taps and for swipes that do not span two adjacent cells.
std::optional<Move> gesture_to_move(const Gesture& gesture, const Calibration& cal, int rows,
                                    int cols);

// Emits device-shell command strings, one per line, byte-stable.
class DeviceShellBackend {
  public:
    explicit DeviceShellBackend(std::ostream& sink) : sink_(&sink) {}

    void emit(const Gesture& gesture);
    static std::string command_text(const Gesture& gesture);

  private:
    std::ostream* sink_;
};

}  // namespace m3
