#include "treenodal/error.hpp"

namespace treenodal {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotConnected: return "NotConnected";
    case Errc::HasCycle: return "HasCycle";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::RootDegreeNotOne: return "RootDegreeNotOne";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::BadSize: return "BadSize";
    case Errc::BadWeightRange: return "BadWeightRange";
    case Errc::ParseError: return "ParseError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::TooLarge: return "TooLarge";
    case Errc::RootIsolationFailure: return "RootIsolationFailure";
    case Errc::NotASignGraph: return "NotASignGraph";
    case Errc::IndexMismatch: return "IndexMismatch";
    case Errc::NotSimple: return "NotSimple";
  }
  return "Unknown";
}

std::string ParseError::describe(const std::string& message, std::size_t line, std::size_t column,
                                 const std::string& field) {
  std::string out = message;
  if (line > 0) out += " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  if (!field.empty()) out += " (field " + field + ")";
  return out;
}

}  // namespace treenodal
