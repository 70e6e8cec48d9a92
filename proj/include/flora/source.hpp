#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace flora {

enum class Source {
    FloraOn,
    PlantNet,
    ObservationOrg,
    iNaturalist,
    Other,
};

inline constexpr Source kAllSources[] = {
    Source::FloraOn, Source::PlantNet, Source::ObservationOrg,
    Source::iNaturalist, Source::Other,
};

const char* source_name(Source source);

// Accepts the display name plus common spellings ("Pl@ntNet", "PlantNet",
// "Observation.org", "ObservationOrg"), case-insensitively.
std::optional<Source> parse_source(std::string_view name);

}  // namespace flora
