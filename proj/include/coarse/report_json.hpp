#pragma once

#include <string>

#include <json.hpp>

#include "coarse/classifiers.hpp"
#include "coarse/density.hpp"
#include "coarse/geometry.hpp"
#include "coarse/structures.hpp"

namespace coarse {

inline constexpr const char* kSchemaVersion = "coarse-sets/1";

/// Longest element list written inside per-cell report entries.
inline constexpr std::size_t kListPreview = 32;

// Every number is written as a string.

std::string format_ratio(double value);

nlohmann::json elements_json(const GroupModel& group, std::span<const Element> elements);
nlohmann::json window_json(const Window& window);
nlohmann::json sample_json(const FiniteSample& sample);
nlohmann::json radius_json(const GroupModel& group, const Radius& radius);
nlohmann::json scale_json(const GroupModel& group, const Scale& scale);
nlohmann::json witness_json(const GroupModel& group, const PwipWitness& witness);

nlohmann::json cellularity_json(const GroupModel& group, const CellularityReport& report);
nlohmann::json prec_json(const GroupModel& source, const GroupModel& target, const PrecReport& report);
nlohmann::json search_json(const GroupModel& group, int depth, const PwipSearch& search);
nlohmann::json thin_json(const GroupModel& group, const ThinReport& report);
nlohmann::json sparse_json(const GroupModel& group, const SparseReport& report);
nlohmann::json isolated_json(const GroupModel& group, const IsolatedBallsReport& report, const Scale& scale);
nlohmann::json classify_json(const FiniteSample& a_set, const ClassifyReport& report, const Scale& scale);
nlohmann::json density_json(const DensityProfile& profile);
nlohmann::json density_pwip_json(const DensityPwipReport& report);

std::string to_string(CellularVerdict verdict);
std::string to_string(PrecVerdict verdict);
std::string to_string(SparseVerdict verdict);
std::string to_string(IsolatedVerdict verdict);
std::string to_string(Universe universe);

}  // namespace coarse
