#pragma once

#include <stdexcept>
#include <string>

namespace dravnmt {

// Error taxonomy shared across the toolkit. Everything derives from Error so
// CLI entry points can catch one type and print a clean message.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInput : Error { using Error::Error; };
struct EncodingError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct LineCountMismatch : Error { using Error::Error; };
struct UntrainedModel : Error { using Error::Error; };
struct TargetTooSmall : Error { using Error::Error; };
struct EmptyCorpus : Error { using Error::Error; };
struct EmptyMergeList : Error { using Error::Error; };
struct ThresholdTooSmall : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct EmptyTrainingSet : Error { using Error::Error; };
struct DivergedLoss : Error { using Error::Error; };
struct UnknownLanguage : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct UnknownRoot : Error { using Error::Error; };
struct LanguageSetMismatch : Error { using Error::Error; };

}  // namespace dravnmt
