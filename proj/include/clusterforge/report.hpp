#pragma once

#include <string>

#include <json.hpp>

#include "clusterforge/ground.hpp"
#include "clusterforge/rational.hpp"

namespace clusterforge {

using ordered_json = nlohmann::ordered_json;

/// One command's outcome in a deterministic shape: same inputs (and seed)
/// give byte-identical renderings. Key order is insertion order, all
/// numbers are integers, and rationals are rendered as "p/q" strings, so
/// no float formatting can wobble.
struct Report {
    std::string command;
    Params params = Params{2, 2, 2};
    std::string outcome;  // "pass", "fail", or "value"
    ordered_json details = ordered_json::object();
    int exit_code = 0;

    std::string to_json() const;  // single line, stable key order
    std::string to_text() const;  // human-readable rendering of the same data
};

/// [[1,2],[3,4],...] with members in canonical ascending order.
ordered_json family_to_json(const Family& f);

ordered_json kset_to_json(KSet s);

}  // namespace clusterforge
