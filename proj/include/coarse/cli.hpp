#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse/density.hpp"
#include "coarse/radius.hpp"
#include "coarse/sample.hpp"

namespace coarse {

/// Resolves a set description
///   {"group": "z", "kind": "explicit|ip|pwip|wn|cantor|periodic", ...params,
///    "window": "N"}
/// to a sample. Finite kinds default to their bounding window widened by the
/// word radius of `margin`, so every listed element is interior; periodic sets
/// default to window 100.
FiniteSample resolve_set(const nlohmann::json& spec, const Radius& margin);

/// Group named by a set description ("z" when the kind implies it).
GroupModel spec_group(const nlohmann::json& spec);

/// Integer set for the density commands: periodic and explicit recipes map
/// directly, {"kind":"generated","ref":{...}} and other finite kinds resolve
/// through resolve_set.
IntegerSet resolve_integer_set(const nlohmann::json& spec);

/// Exit codes: 0 success, 1 negative verdict, 2 input error (JSON on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarse
