#include "gsod/errors.hpp"

namespace gsod {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::InadmissibleR: return "InadmissibleR";
    case ErrorKind::MapDegenerate: return "MapDegenerate";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::ShapeDiverged: return "ShapeDiverged";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace gsod
