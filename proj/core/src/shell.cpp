#include "m3/shell.hpp"

namespace m3 {

const char* screen_name(Screen screen) {
    switch (screen) {
        case Screen::Menu: return "Menu";
        case Screen::Playing: return "Playing";
        case Screen::Crashed: return "Crashed";
    }
    return "Menu";
}

AppShell AppShell::boot(const EngineConfig& cfg, const ScreenRect& screen,
                        const ScreenRect& start_button, const Calibration& cal,
                        std::vector<FaultSpec> faults) {
    AppShell shell;
    shell.screen = Screen::Menu;
    shell.screen_rect = screen;
    shell.start_button = start_button;
    shell.config = cfg;
    shell.calibration = cal;
    shell.faults = std::move(faults);
    shell.game = GameState::new_game(cfg);
    return shell;
}

ShellStep tick_shell(const AppShell& shell, const Gesture& gesture) {
    ShellStep step{shell, std::nullopt};
    switch (shell.screen) {
        case Screen::Crashed:
            break;
        case Screen::Menu:
            if (gesture.kind == Gesture::Kind::Tap &&
                shell.start_button.contains(gesture.x1, gesture.y1))
                step.shell.screen = Screen::Playing;
            break;
        case Screen::Playing: {
            if (gesture.kind != Gesture::Kind::Swipe) break;
            auto move = gesture_to_move(gesture, shell.calibration, shell.config.rows,
                                        shell.config.cols);
            if (!move) {
                // Swipe that does not span two adjacent cells: rejected input.
                StepOutcome out;
                out.state = shell.game;
                out.events.push_back({EventKind::InvalidMove, 0, 0});
                out.state.event_log.push_back(out.events.back());
                step.shell.game = out.state;
                step.outcome = std::move(out);
                break;
            }
            StepOutcome out = apply_move(shell.game, *move, shell.config, shell.faults);
            if (out.crashed) step.shell.screen = Screen::Crashed;
            step.shell.game = out.state;
            step.outcome = std::move(out);
            break;
        }
    }
    return step;
}

}  // namespace m3
