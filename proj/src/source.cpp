#include "flora/source.hpp"

#include "flora/text.hpp"

namespace flora {

const char* source_name(Source source) {
    switch (source) {
        case Source::FloraOn: return "FloraOn";
        case Source::PlantNet: return "Pl@ntNet";
        case Source::ObservationOrg: return "Observation.org";
        case Source::iNaturalist: return "iNaturalist";
        case Source::Other: return "Other";
    }
    return "Other";
}

std::optional<Source> parse_source(std::string_view name) {
    std::string key = to_lower(trim(name));
    if (key == "floraon") return Source::FloraOn;
    if (key == "pl@ntnet" || key == "plantnet") return Source::PlantNet;
    if (key == "observation.org" || key == "observationorg") return Source::ObservationOrg;
    if (key == "inaturalist") return Source::iNaturalist;
    if (key == "other") return Source::Other;
    return std::nullopt;
}

}  // namespace flora
