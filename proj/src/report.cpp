#include "padicframe/report.hpp"

#include <charconv>

namespace padicframe {

namespace {

std::string shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

nlohmann::ordered_json toJson(const FrameBounds& b) {
  return {{"A", b.lower}, {"B", b.upper}, {"onSpanOnly", b.onSpanOnly}};
}

nlohmann::ordered_json toJson(const Tolerances& t) {
  return {{"rank", t.rank},
          {"inequality", t.inequality},
          {"identity", t.identity},
          {"tightness", t.tightness},
          {"hermitian", t.hermitian},
          {"jacobiSweeps", t.jacobi.maxSweeps},
          {"jacobiOffDiagonal", t.jacobi.offDiagonalTolerance}};
}

std::string toCsv(const MatrixXcd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += '"' + shortest(m(r, c).real()) + ',' + shortest(m(r, c).imag()) + '"';
    }
    out += '\n';
  }
  return out;
}

}  // namespace padicframe
