#pragma once

// JSON pieces shared by the battery and the command line.

#include <string>

#include "json.hpp"
#include "padicframe/frame.hpp"

namespace padicframe {

nlohmann::ordered_json toJson(const FrameBounds& b);
nlohmann::ordered_json toJson(const Tolerances& t);

/// Row-major CSV with "re,im" cells (quoted, since they contain the separator).
std::string toCsv(const MatrixXcd& m);

}  // namespace padicframe
