#include "m3/executor.hpp"

#include <cmath>

namespace m3 {

std::pair<double, double> Calibration::to_pixel(Position p) const {
    double u = axis_order == AxisOrder::ColX ? p.col : p.row;
    double v = axis_order == AxisOrder::ColX ? p.row : p.col;
    return {ax + bx * u, ay + by * v};
}

Position Calibration::to_cell(double x, double y) const {
    int u = static_cast<int>(std::lround((x - ax) / bx));
    int v = static_cast<int>(std::lround((y - ay) / by));
    if (axis_order == AxisOrder::ColX) return {v, u};
    return {u, v};
}

Calibration Calibration::from_grid(int origin_x, int origin_y, int cell_px) {
    Calibration cal;
    cal.axis_order = AxisOrder::ColX;
    cal.bx = cell_px;
    cal.by = cell_px;
    cal.ax = origin_x + cell_px / 2.0;
    cal.ay = origin_y + cell_px / 2.0;
    return cal;
}

namespace {

// Ordinary least squares of pixel = a + b*index. Returns false when the
// index never varies.
bool fit_axis(const std::vector<std::pair<double, double>>& pts, double& a, double& b) {
    double n = static_cast<double>(pts.size());
    double su = 0, sp = 0, suu = 0, sup = 0;
    for (const auto& [u, p] : pts) {
        su += u;
        sp += p;
        suu += u * u;
        sup += u * p;
    }
    double det = n * suu - su * su;
    if (std::abs(det) < 1e-9) {
        // No variation: unit step through the sample mean keeps the map
        // invertible and exact on the sampled index.
        b = 1.0;
        a = sp / n - su / n;
        return false;
    }
    b = (n * sup - su * sp) / det;
    a = (sp - b * su) / n;
    return true;
}

}  // namespace

Calibration fit_calibration(
    const std::vector<std::pair<Position, std::pair<double, double>>>& samples,
    Calibration::AxisOrder axis_order) {
    if (samples.size() < 2) throw std::invalid_argument("calibration needs at least two samples");

    std::vector<std::pair<double, double>> xs, ys;
    for (const auto& [pos, px] : samples) {
        double u = axis_order == Calibration::AxisOrder::ColX ? pos.col : pos.row;
        double v = axis_order == Calibration::AxisOrder::ColX ? pos.row : pos.col;
        xs.push_back({u, px.first});
        ys.push_back({v, px.second});
    }

    Calibration cal;
    cal.axis_order = axis_order;
    bool x_ok = fit_axis(xs, cal.ax, cal.bx);
    bool y_ok = fit_axis(ys, cal.ay, cal.by);
    if (!x_ok && !y_ok)
        throw std::invalid_argument("degenerate calibration samples: no variation on either axis");
    if (cal.bx == 0 || cal.by == 0)
        throw std::invalid_argument("degenerate calibration: zero pixel step");
    return cal;
}

Gesture move_to_gesture(const Move& move, const Calibration& cal, const ScreenRect& screen) {
    auto [x1, y1] = cal.to_pixel(move.a);
    auto [x2, y2] = cal.to_pixel(move.b);
    Gesture g = Gesture::swipe(static_cast<int>(std::lround(x1)), static_cast<int>(std::lround(y1)),
                               static_cast<int>(std::lround(x2)), static_cast<int>(std::lround(y2)));
    if (!screen.contains(g.x1, g.y1) || !screen.contains(g.x2, g.y2))
        throw std::out_of_range("gesture endpoint off-screen");
    return g;
}

std::optional<Move> gesture_to_move(const Gesture& gesture, const Calibration& cal, int rows,
                                    int cols) {
    if (gesture.kind != Gesture::Kind::Swipe) return std::nullopt;
    Position a = cal.to_cell(gesture.x1, gesture.y1);
    Position b = cal.to_cell(gesture.x2, gesture.y2);
    auto in_bounds = [&](Position p) {
        return p.row >= 0 && p.row < rows && p.col >= 0 && p.col < cols;
    };
    if (!in_bounds(a) || !in_bounds(b)) return std::nullopt;
    Move m{a, b};
    if (!m.adjacent()) return std::nullopt;
    return m;
}

std::string DeviceShellBackend::command_text(const Gesture& gesture) {
    if (gesture.kind == Gesture::Kind::Tap)
        return "input tap " + std::to_string(gesture.x1) + " " + std::to_string(gesture.y1);
    return "input swipe " + std::to_string(gesture.x1) + " " + std::to_string(gesture.y1) + " " +
           std::to_string(gesture.x2) + " " + std::to_string(gesture.y2);
}

void DeviceShellBackend::emit(const Gesture& gesture) {
    (*sink_) << command_text(gesture) << '\n';
    if (!*sink_) throw std::runtime_error("command sink write failed");
}

}  // namespace m3
