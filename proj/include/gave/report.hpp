#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gave/certify.hpp"
#include "gave/error.hpp"
#include "gave/probe.hpp"
#include "gave/solve.hpp"

namespace gave {

inline constexpr std::string_view kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

enum class Command { check, solve, compare, fuzz };
std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

struct RunConfig {
    Command command = Command::check;

    // check / solve inputs
    std::string a_path;
    std::string b_path;
    std::string rhs_path;
    bool ave = false;

    double tol = 1e-8;
    std::size_t n_cap_vertex = 14;
    std::size_t n_cap_minor = 12;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    Method method = Method::ENUMERATE;
    std::size_t max_iter = 200;

    // compare / fuzz
    std::string hold;
    std::string fail;
    Ensemble ensemble = Ensemble::GAUSSIAN;
    std::size_t n = 3;
    std::optional<double> target;
    std::size_t budget = 1000;
    std::size_t instances = 100;
    std::size_t rhs_per_instance = 20;

    /// Throws InvalidArgument on non-positive tolerances or zero caps.
    void validate() const;
};

/// Config echo written into every report. The thread count is not part of it.
Json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const Json& j);

Json to_json(const Certificate& c);
Json to_json(const HierarchyReport& r);
Json to_json(const SolveReport& r);

/// Runs one command and returns the JSON report text (one document, trailing
/// newline). Throws gave::Error on failure.
std::string run_command(const RunConfig& cfg);

std::string error_json(std::string_view kind, std::string_view detail);

/// Serializes with a fixed field order and 17 significant digits for every
/// floating value; non-finite values become null.
std::string dump_json(const Json& j);

}  // namespace gave
