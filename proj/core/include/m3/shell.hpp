#pragma once

#include <optional>

#include "m3/engine.hpp"
#include "m3/executor.hpp"

namespace m3 {

enum class Screen { Menu, Playing, Crashed };

const char* screen_name(Screen screen);

// Minimal app shell around the game: a menu with a start button, the
// playing screen, and a crashed screen that absorbs everything. Gameplay
// gestures only take effect in Playing.
struct AppShell {
    Screen screen = Screen::Menu;
    ScreenRect screen_rect;
    ScreenRect start_button;
    GameState game;
    EngineConfig config;
    Calibration calibration;
    std::vector<FaultSpec> faults;

    static AppShell boot(const EngineConfig& cfg, const ScreenRect& screen,
                         const ScreenRect& start_button, const Calibration& cal,
                         std::vector<FaultSpec> faults = {});
};

struct ShellStep {
    AppShell shell;
    std::optional<StepOutcome> outcome;
};

ShellStep tick_shell(const AppShell& shell, const Gesture& gesture);

}  // namespace m3
