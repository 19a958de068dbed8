#include "padicframe/cli.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padicframe/battery.hpp"
#include "padicframe/errors.hpp"
#include "padicframe/frame.hpp"
#include "padicframe/report.hpp"
#include "padicframe/sampling.hpp"
#include "padicframe/test_space.hpp"
#include "padicframe/wavelets.hpp"

namespace padicframe {

namespace {

using json = nlohmann::ordered_json;

constexpr long kMaxPrime = 97;
constexpr int kMaxSpaceLevels = 7;
constexpr long kMaxSpaceDimension = 4096;

// Configuration problems map to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  long p = 2;
  std::string system = "kozyrev";
  std::string jRange = "-1..0";
  int m = 1;
  std::string space = "1,1";
  std::string lSet;
  std::string seed = "0xC0FFEE";
  int trials = 50;
  bool spanOnly = false;
  bool project = false;
  std::string outFile;
  Tolerances tol;
  std::string theorem;
};

struct Config {
  Prime p;
  GeneratorSet generators;
  IndexSet index;
  int coarse;
  int fine;
  std::uint64_t seed;
};

long parseInteger(const std::string& text, const std::string& what) {
  long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError("malformed " + what + ": '" + text + "'");
  return value;
}

std::vector<long> splitIntegers(const std::string& text, char sep, const std::string& what) {
  std::vector<long> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, sep)) out.push_back(parseInteger(piece, what));
  return out;
}

GeneratorSet makeGenerators(Prime p, const std::string& system) {
  if (system == "kozyrev") return kozyrevGenerators(p);
  if (system.rfind("ks:", 0) == 0) {
    const long m = parseInteger(system.substr(3), "ks level");
    if (m < 1 || m > 6) throw ConfigError("ks level must be between 1 and 6");
    return khrennikovShelkovichGenerators(p, static_cast<int>(m));
  }
  if (system.rfind("custom:", 0) == 0) {
    const std::string path = system.substr(7);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read custom family file '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("custom family file is not valid JSON: " + std::string(e.what()));
    }
    return customGeneratorsFromJson(p, j);
  }
  throw ConfigError("unknown system '" + system + "' (expected kozyrev, ks:<m> or custom:<file>)");
}

Config resolve(const Options& o) {
  if (o.p > kMaxPrime) throw ConfigError("p must be at most 97");
  const Prime p(o.p);

  std::vector<long> range;
  if (auto dots = o.jRange.find(".."); dots != std::string::npos) {
    range = {parseInteger(o.jRange.substr(0, dots), "j range"), parseInteger(o.jRange.substr(dots + 2), "j range")};
  } else {
    const long j = parseInteger(o.jRange, "j range");
    range = {j, j};
  }
  if (range[0] > range[1]) throw ConfigError("j range must satisfy jMin <= jMax");
  if (range[0] < -20 || range[1] > 20) throw ConfigError("j range must lie within -20..20");
  if (o.m < 0 || o.m > 12) throw ConfigError("m must be between 0 and 12");

  auto levels = splitIntegers(o.space, ',', "space");
  if (levels.size() != 2) throw ConfigError("space must be given as J,K");
  if (levels[0] < 0 || levels[1] < 0) throw ConfigError("space levels must be nonnegative");
  if (levels[0] + levels[1] > kMaxSpaceLevels) throw ConfigError("space must satisfy J + K <= 7");
  long dim = 1;
  for (long k = 0; k < levels[0] + levels[1]; ++k) dim *= o.p;
  if (dim > kMaxSpaceDimension) throw ConfigError("space dimension p^(J+K) exceeds 4096");
  const auto& t = o.tol;
  if (!(t.rank >= 0 && t.inequality >= 0 && t.identity >= 0 && t.tightness >= 0 && t.hermitian >= 0))
    throw ConfigError("tolerances must be nonnegative");
  if (t.jacobi.maxSweeps < 1) throw ConfigError("max-sweeps must be positive");
  std::uint64_t seed = 0;
  try {
    std::size_t used = 0;
    seed = std::stoull(o.seed, &used, 0);
    if (used != o.seed.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw ConfigError("malformed seed '" + o.seed + "'");
  }

  Config c{p, makeGenerators(p, o.system), {}, static_cast<int>(levels[0]), static_cast<int>(levels[1]), seed};
  c.index = IndexSet::full(c.generators.order(), static_cast<int>(range[0]), static_cast<int>(range[1]), o.m);
  if (!o.lSet.empty()) {
    c.index.lSet.clear();
    for (long l : splitIntegers(o.lSet, ',', "generator list")) c.index.lSet.push_back(static_cast<int>(l));
  }
  return c;
}

json configJson(const Config& c, const TestSpace& space) {
  return {{"p", c.p.value()},
          {"system", c.generators.label()},
          {"jRange", {c.index.jMin, c.index.jMax}},
          {"m", c.index.translationDepth},
          {"space", {{"J", c.coarse}, {"K", c.fine}, {"dims", space.dimension()}}}};
}

json coordinateJson(const CoordinateFamily& coords) {
  return {{"familySize", coords.synthesis.cols()},
          {"orthogonalMembers", coords.orthogonalMembers},
          {"projected", coords.projected},
          {"projectedMembers", coords.projectedMembers}};
}

void writeCsv(const std::string& path, const MatrixXcd& m) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << toCsv(m);
}

struct Session {
  Options options;
  Config config;
  TestSpace space;
  FrameFamily family;

  explicit Session(const Options& o)
      : options(o), config(resolve(o)), space(config.p, config.coarse, config.fine),
        family(buildFamily(config.generators, config.index)) {}

  SpaceMode mode() const { return options.project ? SpaceMode::Project : SpaceMode::Strict; }

  json header(const std::string& command) const {
    json out;
    out["command"] = command;
    out.update(configJson(config, space));
    return out;
  }
};

int cmdFamily(const Session& s, std::ostream& out) {
  json report = familyManifest(s.family);
  if (!s.options.outFile.empty()) writeCsv(s.options.outFile, coefficients(s.family, s.space, s.mode()));
  out << report.dump(2) << '\n';
  return 0;
}

int cmdBounds(const Session& s, std::ostream& out) {
  const Tolerances& tol = s.options.tol;
  auto coords = coordinates(s.family, s.space, s.mode());
  auto frameOp = frameOperator(coords.synthesis, tol);
  FrameBounds whole = boundsFromOperator(frameOp, false, tol);
  FrameBounds reported = s.options.spanOnly ? boundsFromOperator(frameOp, true, tol) : whole;
  const bool frame = whole.lower > 0;
  const bool tight = reported.lower > 0 && reported.upper - reported.lower <= tol.tightness * reported.upper;
  auto sigma = singularSummary(coords.synthesis, std::sqrt(tol.rank));

  json report = s.header("bounds");
  report.update(coordinateJson(coords));
  report["spanOnly"] = s.options.spanOnly;
  report["spanDims"] = sigma.rank;
  report["bounds"] = toJson(reported);
  report["tight"] = tight;
  report["frame"] = frame;
  report["besselet"] = true;
  report["classification"] = frame ? "frame" : "besselet";
  report["tolerances"] = toJson(tol);
  writeCsv(s.options.outFile, frameOp.matrix());
  out << report.dump(2) << '\n';
  return 0;
}

/// Canonical dual in space coordinates, computed on the span when asked.
MatrixXcd dualOf(const MatrixXcd& f, bool spanOnly, const Tolerances& tol) {
  if (!spanOnly) return canonicalDual(f, tol);
  auto span = restrictToSpan(f, tol);
  if (span.family.rows() == 0) throw NotAFrame("family spans only the zero vector");
  return span.basis * canonicalDual(span.family, tol);
}

int cmdDual(const Session& s, std::ostream& out) {
  const Tolerances& tol = s.options.tol;
  auto coords = coordinates(s.family, s.space, s.mode());
  MatrixXcd dual = dualOf(coords.synthesis, s.options.spanOnly, tol);
  FrameBounds original = frameBounds(coords.synthesis, s.options.spanOnly, tol);
  FrameBounds dualBounds = frameBounds(dual, s.options.spanOnly, tol);

  json members = json::array();
  for (Eigen::Index i = 0; i < dual.cols(); ++i) members.push_back(dual.col(i).norm());
  json report = s.header("dual");
  report.update(coordinateJson(coords));
  report["spanOnly"] = s.options.spanOnly;
  report["bounds"] = toJson(original);
  report["dualBounds"] = toJson(dualBounds);
  report["expectedDualBounds"] = {{"A", 1.0 / original.upper}, {"B", 1.0 / original.lower}};
  report["dualMemberNorms"] = members;
  report["tolerances"] = toJson(tol);
  writeCsv(s.options.outFile, dual);
  out << report.dump(2) << '\n';
  return 0;
}

int cmdReconstruct(const Session& s, std::ostream& out) {
  const Tolerances& tol = s.options.tol;
  auto coords = coordinates(s.family, s.space, s.mode());
  const MatrixXcd& f = coords.synthesis;
  MatrixXcd dual = dualOf(f, s.options.spanOnly, tol);
  MatrixXcd basis = s.options.spanOnly ? restrictToSpan(f, tol).basis
                                       : MatrixXcd::Identity(f.rows(), f.rows()).eval();
  Rng rng(s.config.seed);
  double viaDual = 0, viaFrame = 0;
  MatrixXcd first(f.rows(), 3);
  for (int k = 0; k < s.options.trials; ++k) {
    VectorXcd g = basis * randomGaussianMatrix<std::complex<double>>(rng, basis.cols(), 1);
    VectorXcd a = f * (dual.adjoint() * g);
    VectorXcd b = dual * (f.adjoint() * g);
    viaDual = std::max(viaDual, (a - g).norm() / g.norm());
    viaFrame = std::max(viaFrame, (b - g).norm() / g.norm());
    if (k == 0) first << g, a, b;
  }
  json report = s.header("reconstruct");
  report.update(coordinateJson(coords));
  report["spanOnly"] = s.options.spanOnly;
  report["seed"] = s.config.seed;
  report["vectors"] = s.options.trials;
  report["residualViaDual"] = viaDual;
  report["residualViaFrame"] = viaFrame;
  report["satisfied"] = viaDual <= tol.inequality && viaFrame <= tol.inequality;
  report["tolerances"] = toJson(tol);
  writeCsv(s.options.outFile, first);
  out << report.dump(2) << '\n';
  return 0;
}

int cmdCheck(const Session& s, std::ostream& out) {
  std::vector<Theorem> theorems;
  if (s.options.theorem == "all") {
    theorems = allTheorems();
  } else if (auto t = parseTheorem(s.options.theorem)) {
    theorems.push_back(*t);
  } else {
    throw ConfigError("unknown theorem '" + s.options.theorem + "'");
  }
  auto coords = coordinates(s.family, s.space, s.mode());
  BatteryConfig battery;
  battery.tolerances = s.options.tol;
  battery.seed = s.config.seed;
  battery.trials = s.options.trials;
  battery.configured = coords.synthesis;

  std::vector<json> reports;
  bool satisfied = true;
  for (Theorem t : theorems) {
    json r = s.header("check");
    r["check"] = theoremName(t);
    r["projected"] = coords.projected;
    json body = runBattery(t, s.space, battery);
    body.erase("check");
    r.update(body);
    satisfied = satisfied && r["satisfied"].get<bool>();
    reports.push_back(std::move(r));
  }
  if (reports.size() == 1) {
    out << reports.front().dump(2) << '\n';
  } else {
    json all = s.header("check");
    all["check"] = "all";
    all["seed"] = s.config.seed;
    all["satisfied"] = satisfied;
    all["reports"] = reports;
    out << all.dump(2) << '\n';
  }
  return satisfied ? 0 : 3;
}

void addCommonOptions(CLI::App& app, Options& o) {
  app.add_option("--p", o.p, "prime p, 2..97")->capture_default_str();
  app.add_option("--system", o.system, "kozyrev | ks:<m> | custom:<file>")->capture_default_str();
  app.add_option("--j", o.jRange, "dilation range a..b")->capture_default_str();
  app.add_option("--m", o.m, "translation depth")->capture_default_str();
  app.add_option("--space", o.space, "test space J,K")->capture_default_str();
  app.add_option("--l", o.lSet, "generator indices, comma separated (default all)");
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--trials", o.trials, "randomized instances")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--span-only", o.spanOnly, "bounds on the span of the family");
  app.add_flag("--project", o.project, "project members outside the space instead of failing");
  app.add_option("--out", o.outFile, "CSV matrix dump");
  app.add_option("--tol-rank", o.tol.rank, "relative rank threshold")->capture_default_str();
  app.add_option("--tol-inequality", o.tol.inequality, "slack on theorem inequalities")->capture_default_str();
  app.add_option("--tol-identity", o.tol.identity, "distance to identity for duality")->capture_default_str();
  app.add_option("--tol-tightness", o.tol.tightness, "relative tightness threshold")->capture_default_str();
  app.add_option("--tol-hermitian", o.tol.hermitian, "Hermitian symmetry tolerance")->capture_default_str();
  app.add_option("--max-sweeps", o.tol.jacobi.maxSweeps, "Jacobi sweep budget")->capture_default_str();
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic multiframelet toolkit", "padicframe"};
  app.require_subcommand(1);
  Options options;
  auto* family = app.add_subcommand("family", "materialize a family and print its manifest");
  auto* bounds = app.add_subcommand("bounds", "optimal frame bounds on the test space");
  auto* dual = app.add_subcommand("dual", "canonical dual family");
  auto* reconstruct = app.add_subcommand("reconstruct", "reconstruction through both decomposition formulas");
  auto* check = app.add_subcommand("check", "randomized theorem check");
  for (auto* sub : {family, bounds, dual, reconstruct, check}) addCommonOptions(*sub, options);
  check->add_option("theorem", options.theorem,
                    "erasure | perturb | image | bounded-below | dual-pair | tight-dual | injectivity | "
                    "decomposition | all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Session session(options);
    if (*family) return cmdFamily(session, out);
    if (*bounds) return cmdBounds(session, out);
    if (*dual) return cmdDual(session, out);
    if (*reconstruct) return cmdReconstruct(session, out);
    return cmdCheck(session, out);
  } catch (const FamilyNotInSpace& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace padicframe
