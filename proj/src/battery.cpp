#include "padicframe/battery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "padicframe/frame_checks.hpp"
#include "padicframe/report.hpp"
#include "padicframe/sampling.hpp"

namespace padicframe {

namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

constexpr int kErasureAttempts = 50;
constexpr int kReconstructionVectors = 20;

struct Theorems {
  Theorem theorem;
  const char* name;
};

constexpr Theorems kNames[] = {
    {Theorem::Erasure, "erasure"},         {Theorem::Perturbation, "perturb"},
    {Theorem::Image, "image"},             {Theorem::BoundedBelow, "bounded-below"},
    {Theorem::DualPair, "dual-pair"},      {Theorem::TightDual, "tight-dual"},
    {Theorem::Injectivity, "injectivity"}, {Theorem::Decomposition, "decomposition"},
};

json bounds(double lower, double upper) { return {{"lower", lower}, {"upper", upper}}; }

MatrixXcd stackTwice(const MatrixXcd& f) {
  MatrixXcd out(f.rows(), 2 * f.cols());
  out << f, f;
  return out;
}

MatrixXcd randomInstance(Rng& rng, const TestSpace& space) {
  const int n = static_cast<int>(space.dimension());
  MatrixXcd f = randomSpaceFrame(rng, space, static_cast<int>(rng.between(0, 2 * n)));
  for (Eigen::Index c = 0; c < f.cols(); ++c) f.col(c) *= rng.uniform(0.3, 1.5);
  return f;
}

/// A tight core with bound in [1, 3] followed by scaled-down random elements
/// of the space, so that removing a few members usually leaves a frame.
MatrixXcd redundantInstance(Rng& rng, const TestSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  MatrixXcd core = randomTightFrame<cd>(rng, n, n + rng.between(1, n), rng.uniform(1.0, 3.0));
  std::vector<LCFunction> members;
  const long extra = rng.between(1, n);
  for (long i = 0; i < extra; ++i) members.push_back(randomFunctionInSpace(rng, space));
  MatrixXcd tail = coordinates(members, space).synthesis;
  for (Eigen::Index c = 0; c < tail.cols(); ++c) {
    const double norm = tail.col(c).norm();
    if (norm > 0) tail.col(c) *= rng.uniform(0.1, 0.8) / norm;
  }
  MatrixXcd out(n, core.cols() + tail.cols());
  out << core, tail;
  return out;
}

/// U diag(sigma) V^H with the given singular values.
MatrixXcd withSingularValues(Rng& rng, const Eigen::VectorXd& sigma) {
  const Eigen::Index n = sigma.size();
  return randomUnitary<cd>(rng, n) * sigma.cast<cd>().asDiagonal() * randomUnitary<cd>(rng, n).adjoint();
}

std::vector<Eigen::Index> randomSubset(Rng& rng, Eigen::Index size, Eigen::Index count) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(size));
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < count; ++i) {
    auto j = static_cast<std::size_t>(i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(size - i))));
    std::swap(all[static_cast<std::size_t>(i)], all[j]);
  }
  all.resize(static_cast<std::size_t>(count));
  std::sort(all.begin(), all.end());
  return all;
}

class Battery {
 public:
  Battery(const TestSpace& space, const BatteryConfig& config)
      : space_(batterySpace(space)), config_(config), tol_(config.tolerances), rng_(config.seed) {
    if (config.configured.size() > 0) {
      auto restricted = restrictToSpan(config.configured, tol_);
      if (restricted.family.rows() > 0) span_ = restricted.family;
    }
  }

  json run(Theorem t) {
    json instances = json::array();
    for (int trial = 0; trial < config_.trials; ++trial) instances.push_back(instance(t, trial));
    int passed = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& r : instances) {
      passed += r["satisfied"].get<bool>() ? 1 : 0;
      margin = std::min(margin, r["margin"].get<double>());
    }
    json out;
    out["check"] = theoremName(t);
    out["seed"] = config_.seed;
    out["trials"] = config_.trials;
    out["spaceDims"] = space_.dimension();
    out["familySize"] = config_.configured.cols();
    if (!instances.empty()) {
      out["bounds"] = instances[0]["bounds"];
      out["theoremBound"] = instances[0].contains("theoremBound") ? instances[0]["theoremBound"] : json::object();
    }
    out["satisfied"] = passed == config_.trials;
    out["margin"] = instances.empty() ? 0.0 : margin;
    out["passed"] = passed;
    out["failed"] = config_.trials - passed;
    out["tolerances"] = toJson(tol_);
    out["instances"] = std::move(instances);
    return out;
  }

 private:
  bool useConfigured(int trial) const { return trial == 0 && span_.has_value(); }

  json header(int trial, const std::string& source, const MatrixXcd& f) const {
    return {{"index", trial}, {"source", source}, {"dims", f.rows()}, {"size", f.cols()}};
  }

  json instance(Theorem t, int trial) {
    switch (t) {
      case Theorem::Erasure: return erasure(trial);
      case Theorem::Perturbation: return perturbation(trial);
      case Theorem::Image: return image(trial);
      case Theorem::BoundedBelow: return boundedBelow(trial);
      case Theorem::DualPair: return dualPair(trial);
      case Theorem::TightDual: return tightDual(trial);
      case Theorem::Injectivity: return injectivity(trial);
      case Theorem::Decomposition: return decomposition(trial);
    }
    return {};
  }

  json erasure(int trial) {
    MatrixXcd f;
    std::vector<Eigen::Index> removed;
    std::string source;
    if (useConfigured(trial)) {
      // The configured family twice over; drop the second copy.
      f = stackTwice(*span_);
      removed.resize(static_cast<std::size_t>(span_->cols()));
      std::iota(removed.begin(), removed.end(), span_->cols());
      source = "configured, duplicated";
    } else {
      f = redundantInstance(rng_, space_);
      source = "random";
    }
    ErasureReport r;
    if (removed.empty()) {
      for (int attempt = 0; attempt < kErasureAttempts; ++attempt) {
        const Eigen::Index count = rng_.between(1, std::max<long>(1, f.cols() / 6));
        removed = randomSubset(rng_, f.cols(), count);
        r = checkErasure(f, removed, tol_);
        if (!r.vacuous) break;
      }
    } else {
      r = checkErasure(f, removed, tol_);
    }
    json out = header(trial, source, f);
    out["removed"] = removed;
    out["bounds"] = toJson(r.original);
    out["survivors"] = toJson(r.survivors);
    out["C"] = r.removedBessel;
    out["vacuous"] = r.vacuous;
    out["theoremBound"] = bounds(r.lowerGuarantee, r.upperGuarantee);
    out["satisfied"] = r.satisfied;
    out["margin"] = r.margin;
    return out;
  }

  json perturbation(int trial) {
    MatrixXcd f, g;
    std::string source;
    if (useConfigured(trial)) {
      f = *span_;
      g = 1.1 * f;
      source = "configured, scaled by 1.1";
    } else {
      f = randomInstance(rng_, space_);
      const double a = frameBounds(f, false, tol_).lower;
      MatrixXcd e = randomGaussianMatrix<cd>(rng_, f.rows(), f.cols());
      const double c0 = besseletBound(e, tol_);
      g = f + std::sqrt(rng_.uniform(0.05, 0.95) * a / c0) * e;
      source = "random";
    }
    auto r = checkPerturbation(f, g, tol_);
    json out = header(trial, source, f);
    out["bounds"] = toJson(r.original);
    out["perturbed"] = toJson(r.perturbed);
    out["C"] = r.differenceBessel;
    out["vacuous"] = r.vacuous;
    out["theoremBound"] = bounds(r.lowerGuarantee, r.upperGuarantee);
    out["satisfied"] = r.satisfied;
    out["margin"] = r.margin;
    return out;
  }

  json image(int trial) {
    MatrixXcd f = useConfigured(trial) ? *span_ : randomInstance(rng_, space_);
    const Eigen::Index n = f.rows();
    std::string kind;
    MatrixXcd u;
    const int variant = useConfigured(trial) ? 1 : trial % 4;
    if (variant == 0) {
      kind = "unitary";
      u = randomUnitary<cd>(rng_, n);
    } else if (variant == 1) {
      kind = "scalar";
      u = (useConfigured(trial) ? 2.0 : rng_.uniform(0.5, 3.0)) * MatrixXcd::Identity(n, n);
    } else if (variant == 2 && n > 1) {
      kind = "projection";
      MatrixXcd q = randomUnitary<cd>(rng_, n).leftCols(rng_.between(1, n - 1));
      u = q * q.adjoint();
    } else {
      kind = "generic";
      const Eigen::Index r = rng_.between(1, n);
      u = randomGaussianMatrix<cd>(rng_, n, r) * randomGaussianMatrix<cd>(rng_, r, n);
    }
    auto r = checkOperatorImage(f, LinearOperatorMatrix<cd>{u, OperatorRole::ClosedRange}, tol_);
    json out = header(trial, useConfigured(trial) ? "configured" : "random", f);
    out["operator"] = kind;
    out["rank"] = r.rank;
    out["operatorNorm"] = r.operatorNorm;
    out["pseudoInverseNorm"] = r.pseudoInverseNorm;
    out["bounds"] = toJson(r.original);
    out["image"] = toJson(r.image);
    out["theoremBound"] = bounds(r.lowerGuarantee, r.upperGuarantee);
    out["satisfied"] = r.satisfied;
    out["margin"] = r.margin;
    return out;
  }

  json boundedBelow(int trial) {
    MatrixXcd f = useConfigured(trial) ? *span_ : randomInstance(rng_, space_);
    const Eigen::Index n = f.rows();
    std::string kind;
    MatrixXcd m;
    if (useConfigured(trial)) {
      kind = "identity";
      m = MatrixXcd::Identity(n, n);
    } else {
      Eigen::VectorXd sigma(n);
      for (Eigen::Index i = 0; i < n; ++i) sigma(i) = rng_.uniform(0.2, 2.0);
      if (trial % 5 == 4) {
        kind = "singular";
        for (auto i : randomSubset(rng_, n, rng_.between(1, std::max<long>(1, n / 2)))) sigma(i) = 0;
      } else {
        kind = "invertible";
      }
      m = withSingularValues(rng_, sigma);
    }
    auto r = checkBoundedBelow(f, LinearOperatorMatrix<cd>{m, OperatorRole::BoundedBelow}, tol_);
    json out = header(trial, useConfigured(trial) ? "configured" : "random", f);
    out["operator"] = kind;
    out["lambda"] = r.lambdaBest;
    out["adjointNorm"] = r.adjointNorm;
    out["predictedFrame"] = r.predictedFrame;
    out["observedFrame"] = r.observedFrame;
    out["bounds"] = toJson(r.original);
    out["image"] = toJson(r.image);
    out["theoremBound"] = bounds(r.lowerGuarantee, r.upperGuarantee);
    out["satisfied"] = r.satisfied;
    out["margin"] = r.margin;
    return out;
  }

  json dualPairRecord(const DualPairReport& r) const {
    const double gap = std::min({std::abs(r.deviationI - tol_.identity), std::abs(r.deviationII - tol_.identity),
                                 std::abs(r.deviationIII - tol_.identity)});
    return {{"i", r.reconstructsViaF},
            {"ii", r.reconstructsViaG},
            {"iii", r.innerProductForm},
            {"deviations", {r.deviationI, r.deviationII, r.deviationIII}},
            {"agree", r.agree},
            {"dualFrames", r.dualFrames},
            {"thresholdGap", gap}};
  }

  json dualPair(int trial) {
    MatrixXcd f = useConfigured(trial) ? *span_ : randomInstance(rng_, space_);
    MatrixXcd g;
    std::string kind;
    const int variant = useConfigured(trial) ? -1 : trial % 4;
    switch (variant) {
      case -1: kind = "self"; g = f; break;
      case 0: kind = "canonical dual"; g = canonicalDual(f, tol_); break;
      case 1: kind = "alternate dual"; g = randomAlternateDual<cd>(rng_, f); break;
      case 2: kind = "doubled canonical dual"; g = 2.0 * canonicalDual(f, tol_); break;
      default: kind = "unrelated"; g = randomFrame<cd>(rng_, f.rows(), f.cols()); break;
    }
    auto r = checkDualPair(f, g, rng_.engine()(), 20, tol_);
    json out = header(trial, useConfigured(trial) ? "configured" : "random", f);
    out["pair"] = kind;
    out["bounds"] = toJson(frameBounds(f, false, tol_));
    out.update(dualPairRecord(r));
    out["satisfied"] = r.satisfied;
    out["margin"] = out["thresholdGap"];
    return out;
  }

  json tightDual(int trial) {
    MatrixXcd f;
    std::string kind;
    if (useConfigured(trial)) {
      f = *span_;
      kind = "configured";
    } else if (trial == 1 || (trial == 0 && !span_)) {
      const auto n = static_cast<Eigen::Index>(space_.dimension());
      f = stackTwice(MatrixXcd::Identity(n, n));
      kind = "duplicated basis";
    } else if (trial % 2 == 0) {
      const auto n = static_cast<Eigen::Index>(space_.dimension());
      f = randomTightFrame<cd>(rng_, n, n + rng_.between(0, n), rng_.uniform(0.5, 3.0));
      kind = "random tight";
    } else {
      f = randomInstance(rng_, space_);
      kind = "random";
    }
    auto r = checkTightViaScaledDual(f, rng_.engine()(), tol_);
    json out = header(trial, kind, f);
    out["bounds"] = toJson(r.bounds);
    out["tight"] = r.tight;
    out["alpha"] = r.alpha;
    out["scaledDualIsDual"] = r.scaledDualIsDual;
    out["dualPair"] = dualPairRecord(r.dualPair);
    out["satisfied"] = r.satisfied;
    out["margin"] = out["dualPair"]["thresholdGap"];
    return out;
  }

  json injectivity(int trial) {
    MatrixXcd f;
    std::string source;
    if (trial == 0 && config_.configured.size() > 0) {
      f = config_.configured;
      source = "configured";
    } else {
      const auto n = static_cast<Eigen::Index>(space_.dimension());
      f = randomFrame<cd>(rng_, n, rng_.between(1, 2 * n));
      if (trial % 3 == 0 && f.cols() > 1) f.col(0) = f.col(1) * cd(0.5, -1.0);
      if (trial % 5 == 0) f.row(0).setZero();
      source = "random";
    }
    auto r = checkInjectivity(f, tol_);
    auto sigma = singularValues(f.adjoint());
    double ratio = 0;
    if (sigma.size() >= f.rows() && f.rows() > 0 && sigma(0) > 0) ratio = std::pow(sigma(f.rows() - 1) / sigma(0), 2);
    json out = header(trial, source, f);
    out["bounds"] = toJson(r.bounds);
    out["viaInjectivity"] = r.viaInjectivity;
    out["viaBounds"] = r.viaBounds;
    out["singularRatioSquared"] = ratio;
    out["satisfied"] = r.satisfied;
    out["margin"] = std::abs(ratio - tol_.rank);
    return out;
  }

  json decomposition(int trial) {
    MatrixXcd f = useConfigured(trial) ? *span_ : randomInstance(rng_, space_);
    MatrixXcd vectors = randomGaussianMatrix<cd>(rng_, f.rows(), kReconstructionVectors);
    auto r = checkDecomposition(f, vectors, tol_);
    json out = header(trial, useConfigured(trial) ? "configured" : "random", f);
    out["bounds"] = toJson(r.bounds);
    out["vectors"] = r.vectors;
    out["residualViaDual"] = r.residualViaDual;
    out["residualViaFrame"] = r.residualViaFrame;
    out["satisfied"] = r.satisfied;
    out["margin"] = r.tolerance - std::max(r.residualViaDual, r.residualViaFrame);
    return out;
  }

  TestSpace space_;
  BatteryConfig config_;
  Tolerances tol_;
  Rng rng_;
  std::optional<MatrixXcd> span_;
};

}  // namespace

std::optional<Theorem> parseTheorem(std::string_view name) {
  for (const auto& t : kNames)
    if (name == t.name) return t.theorem;
  return std::nullopt;
}

std::string theoremName(Theorem t) {
  for (const auto& n : kNames)
    if (n.theorem == t) return n.name;
  return "unknown";
}

const std::vector<Theorem>& allTheorems() {
  static const std::vector<Theorem> all = [] {
    std::vector<Theorem> out;
    for (const auto& t : kNames) out.push_back(t.theorem);
    return out;
  }();
  return all;
}

TestSpace batterySpace(const TestSpace& configured) {
  const long p = configured.prime().value();
  int total = configured.coarse() + configured.fine();
  long dim = 1;
  for (int k = 0; k < total; ++k) dim *= p;
  while (total > 1 && dim > 32) {
    --total;
    dim /= p;
  }
  total = std::max(total, 1);
  const int coarse = std::min(configured.coarse(), total);
  return TestSpace(configured.prime(), coarse, total - coarse);
}

nlohmann::ordered_json runBattery(Theorem theorem, const TestSpace& space, const BatteryConfig& config) {
  return Battery(space, config).run(theorem);
}

}  // namespace padicframe
