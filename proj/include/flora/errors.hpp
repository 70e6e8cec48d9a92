#pragma once

#include <stdexcept>
#include <string>

namespace flora {

enum class ErrorCode {
    // catalog
    EmptyCatalog,
    DuplicateCanonical,
    DuplicateSynonym,
    MalformedBinomial,
    UnknownTaxon,
    // ingest
    MissingDescriptor,
    MalformedDescriptor,
    CoreFileMissing,
    JoinKeyMissing,
    MissingColumn,
    EmptyInput,
    // sampler
    EmptyResult,
    // splitter
    EmptyManifest,
    InconsistentSplit,
    LabelContainsDelimiter,
    // evaluator
    MalformedRecord,
    ScoreOutOfRange,
    DistributionNotNormalized,
    MissingTruth,
    MissingSource,
    MismatchedImageSets,
    // identify / service
    ScorerUnreachable,
    ScorerRateLimited,
    MalformedScorerResponse,
    InvalidPayload,
    // cli
    UsageError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace flora
