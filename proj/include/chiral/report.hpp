#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace chiral {

// One named verification result. `measured` is either a numeric residual /
// count or a short textual summary for exact (rational) checks, where
// tolerance 0 means exact equality was required. `claim` states the
// identity that was tested.
struct CheckReport {
    std::string name;
    bool pass = false;
    std::variant<double, std::string> measured = 0.0;
    double tolerance = 0.0;
    std::string claim;

    static CheckReport exact(std::string name, bool pass, std::string measured,
                             std::string claim) {
        return CheckReport{std::move(name), pass, std::move(measured), 0.0,
                           std::move(claim)};
    }
    static CheckReport within(std::string name, double measured, double tolerance,
                              std::string claim) {
        return CheckReport{std::move(name), measured <= tolerance, measured,
                           tolerance, std::move(claim)};
    }
};

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const std::vector<CheckReport>& rs);
bool all_pass(const std::vector<CheckReport>& rs);

// Thrown when an adaptive quadrature hits its refinement cap before the
// requested tolerance is met.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a mode-index budget leaves no state inside the cutoff block.
struct EmptySafeBlock : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace chiral
